#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "event_loop.hpp"

namespace mmlab {


SimulationResult moran_simulate(const MoranParams& p, double horizon, const std::vector<double>& sample_times,
                                Rng& rng) {
  p.validate();
  GenealogyState state(p);
  const double n = p.n;
  const double resample_rate = n * (n - 1) * p.gamma / 2.0;
  const double mutation_rate = n * p.theta;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> who(0, p.n - 1);
  std::uniform_int_distribution<int> other(0, std::max(p.n - 2, 0));
  std::vector<std::discrete_distribution<int>> kernel;
  for (const auto& row : p.q) kernel.emplace_back(row.begin(), row.end());

  return detail::run_events(state, resample_rate + mutation_rate, horizon, sample_times, p.alphabet(), rng, [&]() {
    Event e;
    e.time = state.time();
    if (unit(rng) * (resample_rate + mutation_rate) < resample_rate) {
      const int k = who(rng);
      int l = other(rng);
      if (l >= k) ++l;
      e.kind = Event::Kind::resample;
      e.source = k;
      e.target = l;
      e.type = state.types()[k];
      state.reproduce(k, {k, l});
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
