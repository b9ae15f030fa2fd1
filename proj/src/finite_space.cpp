#include "mmlab/finite_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mmlab {

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::negative:
      os << "negative distance d(" << i << "," << j << ")";
      break;
    case Kind::diagonal:
      os << "nonzero diagonal d(" << i << "," << i << ")";
      break;
    case Kind::symmetry:
      os << "asymmetric d(" << i << "," << j << ") != d(" << j << "," << i << ")";
      break;
    case Kind::triangle:
      os << "triangle inequality fails for (" << i << "," << j << "," << k << ")";
      break;
  }
  os << " by " << amount;
  return os.str();
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::vector<double> dist_row_major)
    : n_(labels.size()), labels_(std::move(labels)), dist_(std::move(dist_row_major)) {
  if (dist_.size() != n_ * n_) {
    throw std::domain_error("FiniteSpace: distance matrix has " + std::to_string(dist_.size()) +
                            " entries, expected " + std::to_string(n_ * n_));
  }
}

FiniteSpace::FiniteSpace(const std::vector<std::vector<double>>& dist) : n_(dist.size()) {
  labels_.reserve(n_);
  dist_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist[i].size() != n_) throw std::domain_error("FiniteSpace: distance matrix is not square");
    labels_.push_back(std::to_string(i));
    dist_.insert(dist_.end(), dist[i].begin(), dist[i].end());
  }
}

FiniteSpace FiniteSpace::with_default_labels(std::vector<double> dist_row_major, std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteSpace(std::move(labels), std::move(dist_row_major));
}

double FiniteSpace::diameter() const {
  double d = 0.0;
  for (double v : dist_) d = std::max(d, v);
  return d;
}

std::vector<MetricViolation> FiniteSpace::metric_violations(double tol) const {
  using K = MetricViolation::Kind;
  std::vector<MetricViolation> out;
  const auto& d = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs(d(i, i)) > tol) out.push_back({K::diagonal, i, i, i, std::abs(d(i, i))});
    for (std::size_t j = 0; j < n_; ++j) {
      if (d(i, j) < -tol) out.push_back({K::negative, i, j, j, -d(i, j)});
      if (j > i && std::abs(d(i, j) - d(j, i)) > tol)
        out.push_back({K::symmetry, i, j, j, std::abs(d(i, j) - d(j, i))});
    }
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const double excess = d(i, k) - d(i, j) - d(j, k);
        if (excess > tol) out.push_back({K::triangle, i, j, k, excess});
      }
  return out;
}

bool FiniteSpace::is_ultrametric(double tol) const {
  const auto& d = *this;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (d(i, k) > std::max(d(i, j), d(j, k)) + tol) return false;
  return true;
}

}  // namespace mmlab
