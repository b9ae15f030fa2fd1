#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mmlab/finite_space.hpp"

namespace mmlab {

/// The mark space (I, d). Marks are carried as doubles: for a finite mark
/// space a mark is the index of its label, for the unit interval it is the
/// value itself.
class MarkSpace {
 public:
  enum class Kind { finite, unit_interval };

  /// The unit interval with |u - v|.
  MarkSpace() = default;
  static MarkSpace unit_interval() { return MarkSpace(); }
  static MarkSpace finite(FiniteSpace labelled_metric);
  /// k labels "0".."k-1" at mutual distance 1.
  static MarkSpace discrete(std::size_t k);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  std::size_t cardinality() const { return metric_.size(); }
  const FiniteSpace& metric() const { return metric_; }

  double distance(double u, double v) const;
  bool contains(double u) const;
  std::string label(double u) const;

  bool operator==(const MarkSpace& other) const = default;

 private:
  Kind kind_ = Kind::unit_interval;
  FiniteSpace metric_;
};

}  // namespace mmlab
