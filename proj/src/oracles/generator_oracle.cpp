#include <bit>
#include <cmath>
#include <stdexcept>

#include "mmlab/oracles/oracles.hpp"

namespace mmlab::oracle {

double generator_enumerate(const RealFunction& f, double x, int n, const LambdaMeasure& lambda, double theta) {
  if (n < 1 || n > 16) throw std::domain_error("generator_enumerate: N must lie in 1..16");
  const int mutants = static_cast<int>(std::lround(x * n));
  if (std::abs(x * n - mutants) > 1e-9) throw std::domain_error("generator_enumerate: N x must be an integer");
  // individuals 0..mutants-1 carry the mutation
  const std::uint32_t mutant_mask = (1u << mutants) - 1;
  std::vector<double> rate(n + 1, 0.0);
  for (int k = 2; k <= n; ++k) rate[k] = lambda_rate(lambda, n, k);
  const double fx = f(x);
  double out = 0.0;
  for (std::uint32_t block = 0; block < (1u << n); ++block) {
    const int k = std::popcount(block);
    if (k < 2 || rate[k] == 0.0) continue;
    for (int parent = 0; parent < n; ++parent) {
      if (!(block >> parent & 1)) continue;
      const bool parent_mutant = mutant_mask >> parent & 1;
      const std::uint32_t after = parent_mutant ? (mutant_mask | block) : (mutant_mask & ~block);
      out += rate[k] / k * (f(static_cast<double>(std::popcount(after)) / n) - fx);
    }
  }
  for (int i = mutants; i < n; ++i) out += theta * (f(static_cast<double>(mutants + 1) / n) - fx);
  return out;
}

}  // namespace mmlab::oracle
