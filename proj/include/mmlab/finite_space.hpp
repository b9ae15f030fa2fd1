#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mmlab {

struct MetricViolation {
  enum class Kind { negative, diagonal, symmetry, triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  double amount = 0.0;  // how far the offending inequality is off

  std::string describe() const;
};

/// A finite point set with an explicit distance matrix.
///
/// The matrix is stored as given; nothing is enforced on construction apart
/// from its shape, so malformed inputs can be inspected with
/// metric_violations().
class FiniteSpace {
 public:
  FiniteSpace() = default;
  FiniteSpace(std::vector<std::string> labels, std::vector<double> dist_row_major);
  explicit FiniteSpace(const std::vector<std::vector<double>>& dist);

  /// Points labelled "0".."n-1".
  static FiniteSpace with_default_labels(std::vector<double> dist_row_major, std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
  const std::vector<double>& matrix() const { return dist_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double diameter() const;

  /// Exhaustive scan over pairs and triples; tol is absolute slack.
  std::vector<MetricViolation> metric_violations(double tol = 1e-12) const;
  bool is_ultrametric(double tol = 1e-12) const;

  bool operator==(const FiniteSpace& other) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> dist_;
};

}  // namespace mmlab
