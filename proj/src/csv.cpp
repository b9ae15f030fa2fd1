#include "mmlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mmlab {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double v) {
  char buf[40];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::domain_error("CsvTable: row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::render(const std::string& config_hash) const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  out << "# config_hash=" << config_hash << '\n';
  return out.str();
}

void CsvTable::write(const std::string& path, const std::string& config_hash) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << render(config_hash);
}

void write_svg_plot(const std::string& path, const std::string& title, const std::string& x_label,
                    const std::string& y_label, const std::vector<PlotSeries>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  const double w = 640, h = 400, left = 60, right = 20, top = 40, bottom = 50;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto py = [&](double y) { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  f << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
    << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
    << "\" stroke=\"black\"/>\n";
  f << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label
    << " [" << format_number(x0) << ", " << format_number(x1) << "]</text>\n";
  f << "<text x=\"14\" y=\"" << h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << h / 2
    << ")\" text-anchor=\"middle\">" << y_label << " [" << format_number(y0) << ", " << format_number(y1)
    << "]</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    f << "<polyline fill=\"none\" stroke=\"" << colours[k % 6] << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) f << (i ? " " : "") << px(s.x[i]) << "," << py(s.y[i]);
    f << "\"/>\n";
    f << "<text x=\"" << w - right - 4 << "\" y=\"" << top + 14 * (k + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
      << colours[k % 6] << "\">" << s.name << "</text>\n";
  }
  f << "</svg>\n";
}

}  // namespace mmlab
