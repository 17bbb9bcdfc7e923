#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vdd/csv.hpp"

namespace vdd::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 2 on a configuration error, 1 on a runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SVG 1.1 line chart of column y against column x. Rows with an empty y cell
/// (and, with log_y, non-positive y) are skipped. Throws ConfigError for a
/// missing, empty or non-numeric column.
std::string render_svg(const CsvTable& table, std::string_view x_column, std::string_view y_column,
                       bool log_y);

void emit_svg(const std::filesystem::path& csv_path, std::string_view x_column,
              std::string_view y_column, bool log_y, const std::filesystem::path& svg_path);

}  // namespace vdd::cli
