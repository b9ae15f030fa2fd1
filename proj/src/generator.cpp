#include "mmlab/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mmlab {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

int mutant_count(double x, int n) {
  if (n < 1) throw std::domain_error("generator: N must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("generator: x must lie in [0,1]");
  const double nx = x * n;
  const double rounded = std::round(nx);
  if (std::abs(nx - rounded) > 1e-9) throw std::domain_error("generator: N x must be an integer");
  return static_cast<int>(rounded);
}

}  // namespace

double xi_lambda_generator_apply(const RealFunction& f, double x, int n, const LambdaMeasure& lambda, double theta) {
  const int a = mutant_count(x, n), b = n - a;
  const double nn = n, fx = f(x);
  double out = b > 0 ? theta * b * (f(x + 1.0 / nn) - fx) : 0.0;
  for (int k = 2; k <= n; ++k) {
    const double rate = lambda_rate(lambda, n, k);
    if (rate == 0.0) continue;
    double inner = 0.0;
    for (int m = 0; m <= k; ++m) {
      const double ways = binomial(a, m) * binomial(b, k - m);
      if (ways == 0.0) continue;
      // mutant parent: the k-m others turn mutant; otherwise the m mutants are lost
      inner += ways * (static_cast<double>(m) / k * (f(x + (k - m) / nn) - fx) +
                       static_cast<double>(k - m) / k * (f(x - m / nn) - fx));
    }
    out += rate * inner;
  }
  return out;
}

double xi_moran_generator_apply(const RealFunction& f, double x, int n, double gamma, double theta) {
  const int a = mutant_count(x, n);
  const double nn = n, fx = f(x);
  const double resample = 0.5 * gamma * nn * nn * x * (1.0 - x);
  double out = 0.0;
  if (a < n) out += (resample + theta * nn * (1.0 - x)) * (f(x + 1.0 / nn) - fx);
  if (a > 0) out += resample * (f(x - 1.0 / nn) - fx);
  return out;
}

double generator_drift_bound(double x, int n, double lambda_mass, double theta, double f2_sup) {
  return x * (1.0 - x) * f2_sup * lambda_mass + kGeneratorRemainderConstant * f2_sup * theta / n;
}

}  // namespace mmlab
