#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mmlab/xi_process.hpp"

namespace mmlab {

/// w''(e, delta) for a piecewise-constant path taking states[j] on
/// [times[j], times[j+1]): the sup over t1 <= t <= t2 with t2 - t1 <= delta
/// of min(dist(e(t), e(t1)), dist(e(t2), e(t))). The sup is reached on
/// segment triples a < b < c with times[c] - times[a+1] < delta.
template <class State, class Dist>
double cadlag_modulus(const std::vector<double>& times, const std::vector<State>& states, Dist dist, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("cadlag_modulus: delta must be positive");
  if (times.size() != states.size()) throw std::domain_error("cadlag_modulus: one state per jump time");
  const std::size_t n = times.size();
  double best = 0.0;
  for (std::size_t a = 0; a + 2 < n; ++a)
    for (std::size_t c = a + 2; c < n && times[c] - times[a + 1] < delta; ++c)
      for (std::size_t b = a + 1; b < c; ++b) {
        const double v = std::min(dist(states[b], states[a]), dist(states[c], states[b]));
        if (v > best) best = v;
      }
  return best;
}

double cadlag_modulus(const ScalarPath& path, double delta);

}  // namespace mmlab
