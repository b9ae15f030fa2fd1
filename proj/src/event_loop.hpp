#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mmlab/genealogy.hpp"

namespace mmlab {

namespace detail {

// Runs an event-driven simulation: `rate` is the constant total event rate,
// `fire` draws and applies one event at the state's current time.
template <class Fire>
SimulationResult run_events(GenealogyState& state, double rate, double horizon,
                            const std::vector<double>& sample_times, std::size_t alphabet, Rng& rng, Fire fire) {
  if (!(horizon > 0.0)) throw std::domain_error("simulate: horizon must be positive");
  for (double t : sample_times)
    if (!(t >= 0.0 && t <= horizon)) throw std::domain_error("simulate: sample times must lie in [0, T]");
  std::vector<std::size_t> order(sample_times.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sample_times[a] < sample_times[b]; });

  SimulationResult out;
  std::vector<std::optional<FmmSpace>> snaps(sample_times.size());
  std::exponential_distribution<double> wait(rate > 0.0 ? rate : 1.0);
  double next = rate > 0.0 ? wait(rng) : horizon + 1.0;
  std::size_t pending = 0;
  auto emit_until = [&](double limit) {
    while (pending < order.size() && sample_times[order[pending]] < limit) {
      state.advance(sample_times[order[pending]]);
      snaps[order[pending]] = state.snapshot(alphabet);
      ++pending;
    }
  };
  while (next <= horizon) {
    emit_until(next);
    state.advance(next);
    out.log.push_back(fire());
    next += wait(rng);
  }
  emit_until(horizon + 1.0);
  state.advance(horizon);
  for (auto& s : snaps) out.snapshots.push_back(std::move(*s));
  return out;
}

}  // namespace detail

}  // namespace mmlab
