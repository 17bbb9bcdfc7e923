#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vdd {

/// %.17g, or an empty string for NaN.
std::string format_real(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  /// Throws DomainError when the cell count differs from the header.
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t width_;
};

/// Plain comma-separated table; no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
};

/// Throws ParseError on an empty input or a ragged row.
CsvTable read_csv(std::istream& in);

}  // namespace vdd
