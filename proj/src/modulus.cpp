#include "mmlab/modulus.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mmlab {

Modulus::Modulus(std::vector<std::pair<double, double>> breakpoints, Tail tail)
    : points_(std::move(breakpoints)), tail_(tail) {
  if (points_.empty() || points_.front() != std::pair<double, double>{0.0, 0.0})
    throw std::domain_error("Modulus: the first breakpoint must be (0, 0)");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].first > points_[i - 1].first)) throw std::domain_error("Modulus: abscissae must increase");
    if (!(points_[i].second >= points_[i - 1].second)) throw std::domain_error("Modulus: values must not decrease");
  }
  if (tail_ == Tail::linear && points_.size() < 2) throw std::domain_error("Modulus: a linear tail needs two breakpoints");
}

Modulus Modulus::linear(double slope) {
  if (!(slope >= 0.0)) throw std::domain_error("Modulus::linear: slope must be nonnegative");
  return Modulus({{0.0, 0.0}, {1.0, slope}}, Tail::linear);
}

Modulus Modulus::zero() { return Modulus({{0.0, 0.0}}, Tail::constant); }

double Modulus::operator()(double delta) const {
  if (delta <= 0.0) return 0.0;
  const auto& last = points_.back();
  if (delta > last.first) {
    switch (tail_) {
      case Tail::constant:
        return last.second;
      case Tail::infinite:
        return std::numeric_limits<double>::infinity();
      case Tail::linear: {
        const auto& prev = points_[points_.size() - 2];
        return last.second + (delta - last.first) * (last.second - prev.second) / (last.first - prev.first);
      }
    }
  }
  auto hi = std::lower_bound(points_.begin(), points_.end(), delta,
                             [](const std::pair<double, double>& p, double d) { return p.first < d; });
  if (hi->first == delta) return hi->second;
  auto lo = hi - 1;
  return lo->second + (delta - lo->first) * (hi->second - lo->second) / (hi->first - lo->first);
}

}  // namespace mmlab
