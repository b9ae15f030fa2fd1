#include "mmlab/xi_process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmlab/parallel.hpp"
#include "mmlab/stats.hpp"

namespace mmlab {

double ScalarPath::at(double t) const {
  if (time.empty()) throw std::domain_error("ScalarPath: empty path");
  auto it = std::upper_bound(time.begin(), time.end(), t);
  if (it == time.begin()) return value.front();
  return value[it - time.begin() - 1];
}

double ScalarPath::sup_until(double t) const {
  double s = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < time.size() && time[i] <= t; ++i) s = std::max(s, value[i]);
  return s;
}

ScalarPath xi_moran_simulate(int n, double gamma, double theta, double horizon, Rng& rng) {
  if (n < 1) throw std::domain_error("xi_moran_simulate: N must be positive");
  if (!(gamma >= 0.0) || !(theta >= 0.0)) throw std::domain_error("xi_moran_simulate: rates must be nonnegative");
  ScalarPath path{{0.0}, {0.0}};
  const double nn = n;
  int count = 0;
  double t = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    const double x = count / nn;
    const double resample = 0.5 * gamma * nn * nn * x * (1.0 - x);
    const double up = resample + theta * nn * (1.0 - x);
    const double total = up + resample;
    if (!(total > 0.0)) break;
    t += std::exponential_distribution<double>(total)(rng);
    if (t > horizon) break;
    count += unit(rng) * total < up ? 1 : -1;
    path.time.push_back(t);
    path.value.push_back(count / nn);
  }
  return path;
}

ScalarPath sde_simulate(double gamma, double theta, double horizon, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw std::domain_error("sde_simulate: dt must be positive");
  if (!(horizon >= 0.0)) throw std::domain_error("sde_simulate: horizon must be nonnegative");
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  ScalarPath path;
  path.time.reserve(steps + 1);
  path.value.reserve(steps + 1);
  path.time.push_back(0.0);
  path.value.push_back(0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  double z = 0.0;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t_prev = (i - 1) * dt, t_next = std::min(horizon, i * dt), h = t_next - t_prev;
    const double diffusion = std::sqrt(std::max(0.0, gamma * z * (1.0 - z)));
    z += theta * (1.0 - z) * h + diffusion * std::sqrt(h) * normal(rng);
    z = std::clamp(z, 0.0, 1.0);
    path.time.push_back(t_next);
    path.value.push_back(z);
  }
  return path;
}

MutboundReport mutbound_verify(int n, double gamma, double theta, double delta, double a, std::size_t replicas,
                               std::uint64_t seed, unsigned threads) {
  if (!(a > 0.0) || !(delta > 0.0)) throw std::domain_error("mutbound_verify: a and delta must be positive");
  if (replicas < 100) throw std::domain_error("mutbound_verify: need at least 100 replicas");
  MutboundReport r;
  r.replicas = replicas;
  r.sup_values = parallel_replicas(replicas, threads, [&](std::size_t i) {
    Rng rng = replica_rng(seed, i);
    return xi_moran_simulate(n, gamma, theta, delta, rng).sup_until(delta);
  });
  for (double s : r.sup_values) r.exceedances += s >= a;
  r.estimate = static_cast<double>(r.exceedances) / replicas;
  r.stderr_ = binomial_stderr(r.exceedances, replicas);
  std::tie(r.ci_low, r.ci_high) = wilson_interval(r.exceedances, replicas);
  r.bound = moment_constant(gamma, theta) * delta * delta / (a * a);
  r.pass = r.estimate <= r.bound + 3.0 * r.stderr_;
  return r;
}

}  // namespace mmlab
