#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mmlab {

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

/// Shortest round-tripping decimal for a double ("%.17g" trimmed when exact).
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  /// Header, rows, then "# config_hash=<hash>".
  std::string render(const std::string& config_hash) const;
  void write(const std::string& path, const std::string& config_hash) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};

/// Minimal SVG line chart with linear axes.
void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace mmlab
