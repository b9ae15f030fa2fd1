#pragma once

#include <cstdint>
#include <vector>

#include "mmlab/rng.hpp"

namespace mmlab {

/// Right-continuous step path (value[i] holds on [time[i], time[i+1])) or an
/// Euler grid; time[0] is the start.
struct ScalarPath {
  std::vector<double> time;
  std::vector<double> value;

  double at(double t) const;
  double sup_until(double t) const;
};

/// xi^N on {0, 1/N, ..., 1} from 0: down at (gamma/2) N^2 x(1-x), up at
/// (gamma/2) N^2 x(1-x) + theta N (1-x).
ScalarPath xi_moran_simulate(int n, double gamma, double theta, double horizon, Rng& rng);

/// Euler scheme for dZ = theta(1-Z) dt + sqrt(gamma Z(1-Z)) dB, Z_0 = 0,
/// clamped to [0,1] with the radicand floored at 0.
ScalarPath sde_simulate(double gamma, double theta, double horizon, double dt, Rng& rng);

/// 1/2 theta (2 theta + gamma).
inline double moment_constant(double gamma, double theta) { return 0.5 * theta * (2.0 * theta + gamma); }

struct MutboundReport {
  std::size_t replicas = 0;
  std::size_t exceedances = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double ci_low = 0.0, ci_high = 0.0;  // Wilson 95%
  double bound = 0.0;                  // C a^-2 delta^2
  bool pass = false;                   // estimate <= bound + 3 stderr
  std::vector<double> sup_values;      // sup_{t <= delta} xi per replica
};

/// Monte-Carlo estimate of P(sup_{t <= delta} xi^N_t >= a); replica i uses
/// replica_seed(seed, i).
MutboundReport mutbound_verify(int n, double gamma, double theta, double delta, double a, std::size_t replicas,
                               std::uint64_t seed, unsigned threads = 0);

}  // namespace mmlab
