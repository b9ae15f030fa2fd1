#pragma once

#include <utility>
#include <vector>

namespace mmlab {

/// Monotone piecewise-linear function on [0, inf) with h(0) = 0, used both
/// for moduli of continuity and for moduli of cadlagness.
class Modulus {
 public:
  /// What happens right of the last breakpoint.
  enum class Tail { constant, linear, infinite };

  /// Breakpoints must start at (0, 0) with strictly increasing abscissae and
  /// nondecreasing values; std::domain_error otherwise.
  explicit Modulus(std::vector<std::pair<double, double>> breakpoints, Tail tail = Tail::constant);

  /// h(delta) = slope * delta everywhere.
  static Modulus linear(double slope);
  static Modulus zero();

  double operator()(double delta) const;

  const std::vector<std::pair<double, double>>& breakpoints() const { return points_; }
  Tail tail() const { return tail_; }

 private:
  std::vector<std::pair<double, double>> points_;
  Tail tail_;
};

}  // namespace mmlab
