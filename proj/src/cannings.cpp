#include <cmath>
#include <stdexcept>

#include "event_loop.hpp"

namespace mmlab {

SimulationResult cannings_simulate(const MoranParams& p, const LambdaMeasure& lambda, double horizon,
                                   const std::vector<double>& sample_times, Rng& rng) {
  p.validate(false);
  lambda.validate();
  if (p.n < 2) throw std::domain_error("cannings_simulate: N must be at least 2");
  const int n = p.n;
  // Block size k fires at rate C(N,k) lambda_{N,k}.
  std::vector<double> block_rate(n + 1, 0.0);
  double resample_rate = 0.0;
  for (int k = 2; k <= n; ++k) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    block_rate[k] = std::exp(log_binom) * lambda_rate(lambda, n, k);
    resample_rate += block_rate[k];
  }
  if (!(resample_rate > 0.0)) throw std::domain_error("cannings_simulate: all block rates vanish");
  const double mutation_rate = n * p.theta;

  GenealogyState state(p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> who(0, n - 1);
  std::discrete_distribution<int> block_size(block_rate.begin(), block_rate.end());
  std::vector<std::discrete_distribution<int>> kernel;
  for (const auto& row : p.q) kernel.emplace_back(row.begin(), row.end());
  std::vector<int> perm(n);

  return detail::run_events(state, resample_rate + mutation_rate, horizon, sample_times, p.alphabet(), rng, [&]() {
    Event e;
    e.time = state.time();
    if (unit(rng) * (resample_rate + mutation_rate) < resample_rate) {
      const int k = block_size(rng);
      std::iota(perm.begin(), perm.end(), 0);
      for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(perm[i], perm[pick(rng)]);
      }
      e.kind = Event::Kind::block;
      e.block.assign(perm.begin(), perm.begin() + k);
      std::sort(e.block.begin(), e.block.end());
      std::uniform_int_distribution<int> parent(0, k - 1);
      e.source = e.block[parent(rng)];
      e.type = state.types()[e.source];
      state.reproduce(e.source, e.block);
    } else {
      const int k = who(rng);
      e.kind = Event::Kind::mutate;
      e.source = k;
      e.type = kernel[state.types()[k]](rng);
      state.mutate(k, e.type);
    }
    return e;
  });
}

}  // namespace mmlab
