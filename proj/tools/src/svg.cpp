#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "vdd/cli.hpp"
#include "vdd/errors.hpp"

namespace vdd::cli {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

std::optional<double> parse_number(const std::string& cell) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const CsvTable& table, std::string_view x_column, std::string_view y_column,
                       bool log_y) {
  const auto xi = table.column(x_column);
  if (!xi) throw ConfigError("x", "no column '" + std::string(x_column) + "'");
  const auto yi = table.column(y_column);
  if (!yi) throw ConfigError("y", "no column '" + std::string(y_column) + "'");
  if (table.rows.empty()) throw ConfigError("csv", "no data rows");

  std::vector<std::pair<double, double>> points;
  for (const auto& row : table.rows) {
    if (row[*yi].empty()) continue;
    const auto x = parse_number(row[*xi]);
    if (!x) throw ConfigError("x", "non-numeric value '" + row[*xi] + "'");
    const auto y = parse_number(row[*yi]);
    if (!y) throw ConfigError("y", "non-numeric value '" + row[*yi] + "'");
    if (log_y && !(*y > 0.0)) continue;
    points.emplace_back(*x, log_y ? std::log10(*y) : *y);
  }
  if (points.empty()) throw ConfigError("y", "no plottable values");

  auto [xmin, xmax] = std::pair{points.front().first, points.front().first};
  auto [ymin, ymax] = std::pair{points.front().second, points.front().second};
  for (const auto& [x, y] : points) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };
  auto ylabel = [&](double y) { return log_y ? num(std::pow(10.0, y)) : num(y); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << coord(kLeft + pw)
      << "\" y2=\"" << coord(kTop + ph) << "\"/>\n"
      << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(kLeft)
      << "\" y2=\"" << coord(kTop + ph) << "\"/>\n"
      << "</g>\n"
      << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fy = ymin + (ymax - ymin) * k / 4.0;
    svg << "<text x=\"" << coord(sx(fx)) << "\" y=\"" << coord(kTop + ph + 15) << "\" text-anchor=\"middle\">"
        << num(fx) << "</text>\n";
    svg << "<text x=\"" << coord(kLeft - 5) << "\" y=\"" << coord(sy(fy) + 4) << "\" text-anchor=\"end\">"
        << ylabel(fy) << "</text>\n";
  }
  svg << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 10)
      << "\" text-anchor=\"middle\">" << escape(x_column) << "</text>\n"
      << "<text x=\"15\" y=\"" << coord(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << coord(kTop + ph / 2) << ")\">" << escape(y_column) << (log_y ? " (log)" : "") << "</text>\n"
      << "</g>\n"
      << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) svg << ' ';
    svg << coord(sx(points[i].first)) << ',' << coord(sy(points[i].second));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

void emit_svg(const std::filesystem::path& csv_path, std::string_view x_column, std::string_view y_column,
              bool log_y, const std::filesystem::path& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw ConfigError("csv", "cannot open " + csv_path.string());
  CsvTable table;
  try {
    table = read_csv(in);
  } catch (const ParseError& e) {
    throw ConfigError("csv", e.what());
  }
  const std::string svg = render_svg(table, x_column, y_column, log_y);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + svg_path.string());
  out << svg;
}

}  // namespace vdd::cli
