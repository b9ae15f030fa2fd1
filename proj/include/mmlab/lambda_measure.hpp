#pragma once

#include <utility>
#include <vector>

namespace mmlab {

/// A finite measure Lambda on [0,1]: point masses plus an optional
/// piecewise-constant density.
struct LambdaMeasure {
  std::vector<std::pair<double, double>> atoms;  // (location, mass)
  std::vector<double> density_breaks;            // 0 = b_0 < ... < b_K = 1, or empty
  std::vector<double> density_values;            // K nonnegative values

  static LambdaMeasure dirac(double location, double mass = 1.0);
  /// Lambda = delta_0, the Kingman case.
  static LambdaMeasure kingman() { return dirac(0.0); }
  static LambdaMeasure uniform(double scale = 1.0);

  /// Throws std::domain_error unless locations lie in [0,1], masses and
  /// density values are finite and nonnegative, and the breaks partition [0,1].
  void validate() const;
  double total_mass() const;

  LambdaMeasure operator+(const LambdaMeasure& other) const;
};

/// lambda_{N,k} = int y^{k-2} (1-y)^{N-k} Lambda(dy), with 0^0 = 1.
double lambda_rate(const LambdaMeasure& lambda, int n, int k);

struct DustFreeDiagnostic {
  double integral = 0.0;  // int y^{-1} Lambda(dy), finite part
  bool divergent = false;
};

/// Dust-free iff the integral diverges.
DustFreeDiagnostic dust_free_diagnostic(const LambdaMeasure& lambda);

}  // namespace mmlab
