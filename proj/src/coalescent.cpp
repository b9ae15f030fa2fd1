#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mmlab/genealogy.hpp"

namespace mmlab {

CoalescentSample coalescent_sample(int n, const LambdaMeasure& lambda, Rng& rng) {
  if (n < 2) throw std::domain_error("coalescent_sample: N must be at least 2");
  lambda.validate();
  // rates[b][k]: total rate of k-mergers among b blocks.
  std::vector<std::vector<double>> rates(n + 1);
  for (int b = 2; b <= n; ++b) {
    rates[b].assign(b + 1, 0.0);
    for (int k = 2; k <= b; ++k) {
      const double log_binom = std::lgamma(b + 1.0) - std::lgamma(k + 1.0) - std::lgamma(b - k + 1.0);
      rates[b][k] = std::exp(log_binom) * lambda_rate(lambda, b, k);
    }
  }

  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<double> d(un * un, 0.0);
  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[i] = {i};
  double t = 0.0;
  while (blocks.size() > 1) {
    const int b = static_cast<int>(blocks.size());
    const double total = std::accumulate(rates[b].begin(), rates[b].end(), 0.0);
    if (!(total > 0.0)) throw std::domain_error("coalescent_sample: merger rates vanish, no MRCA is reached");
    t += std::exponential_distribution<double>(total)(rng);
    const int k = std::discrete_distribution<int>(rates[b].begin(), rates[b].end())(rng);
    // k distinct blocks by partial shuffle, moved to the back and merged.
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(0, b - 1 - i);
      std::swap(blocks[pick(rng)], blocks[b - 1 - i]);
    }
    std::vector<int> merged;
    for (int i = b - k; i < b; ++i) {
      for (int leaf : blocks[i])
        for (int other : merged) d[leaf * un + other] = d[other * un + leaf] = t;
      merged.insert(merged.end(), blocks[i].begin(), blocks[i].end());
    }
    blocks.resize(b - k);
    blocks.push_back(std::move(merged));
  }

  CoalescentSample out;
  out.space = std::make_shared<const FiniteSpace>(FiniteSpace::with_default_labels(std::move(d), un));
  out.weight.assign(un, 1.0 / n);
  out.height = t;
  return out;
}

}  // namespace mmlab
