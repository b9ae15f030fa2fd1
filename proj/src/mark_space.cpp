#include "mmlab/mark_space.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mmlab {

namespace {

std::size_t index_of(double u) { return static_cast<std::size_t>(std::llround(u)); }

}  // namespace

MarkSpace MarkSpace::finite(FiniteSpace labelled_metric) {
  if (labelled_metric.size() == 0) throw std::domain_error("MarkSpace: finite mark space needs a label");
  MarkSpace out;
  out.kind_ = Kind::finite;
  out.metric_ = std::move(labelled_metric);
  return out;
}

MarkSpace MarkSpace::discrete(std::size_t k) {
  std::vector<double> d(k * k, 1.0);
  for (std::size_t i = 0; i < k; ++i) d[i * k + i] = 0.0;
  return finite(FiniteSpace::with_default_labels(std::move(d), k));
}

bool MarkSpace::contains(double u) const {
  if (kind_ == Kind::unit_interval) return u >= 0.0 && u <= 1.0;
  return u >= 0.0 && u == std::floor(u) && index_of(u) < metric_.size();
}

double MarkSpace::distance(double u, double v) const {
  if (kind_ == Kind::unit_interval) return std::abs(u - v);
  return metric_(index_of(u), index_of(v));
}

std::string MarkSpace::label(double u) const {
  if (kind_ == Kind::finite) return metric_.labels()[index_of(u)];
  std::ostringstream os;
  os.precision(17);
  os << u;
  return os.str();
}

}  // namespace mmlab
