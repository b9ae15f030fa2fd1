#include "mmlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmlab/parallel.hpp"
#include "mmlab/stats.hpp"
#include "mmlab/xi_process.hpp"

namespace mmlab {

namespace {

struct Window {
  double start, end, t0;
};

std::vector<Window> windows(double delta, double horizon) {
  std::vector<Window> out;
  const double half = 0.5 * delta;
  for (std::size_t i = 0; i * half < horizon; ++i) {
    const double start = i * half;
    // The first window has no earlier half-window; it is anchored at 0.
    out.push_back({start, std::min((i + 1) * half, horizon), i == 0 ? 0.0 : (i - 1) * half});
  }
  return out;
}

struct ReplicaOutcome {
  std::vector<double> sup_fraction;  // per delta
  std::vector<std::size_t> pair_checks, violations;
};

}  // namespace

PipelineReport markfn_pipeline(const PipelineConfig& cfg, std::uint64_t seed, unsigned threads) {
  if (!(cfg.horizon > 0.0)) throw std::domain_error("markfn_pipeline: T must be positive");
  if (!(cfg.eps > 0.0)) throw std::domain_error("markfn_pipeline: eps must be positive");
  if (cfg.delta_grid.empty()) throw std::domain_error("markfn_pipeline: empty delta grid");
  if (cfg.checks_per_window < 1) throw std::domain_error("markfn_pipeline: need at least one check per window");
  for (double d : cfg.delta_grid)
    if (!(d > 0.0)) throw std::domain_error("markfn_pipeline: deltas must be positive");
  if (cfg.replicas < 1) throw std::domain_error("markfn_pipeline: need at least one replica");

  const double resampling_mass = cfg.model == PipelineModel::moran ? cfg.params.gamma : cfg.lambda.total_mass();
  PipelineReport report;
  report.constant = moment_constant(resampling_mass, cfg.params.theta);

  // All check times for all deltas share one simulation per replica.
  std::vector<std::vector<Window>> wins;
  std::vector<double> check_times;
  for (double delta : cfg.delta_grid) {
    wins.push_back(windows(delta, cfg.horizon));
    for (const Window& w : wins.back())
      for (int j = 0; j < cfg.checks_per_window; ++j)
        check_times.push_back(w.start + (j + 0.5) / cfg.checks_per_window * (w.end - w.start));
  }
  std::sort(check_times.begin(), check_times.end());
  check_times.erase(std::unique(check_times.begin(), check_times.end()), check_times.end());

  const int n = cfg.params.n;
  auto outcomes = parallel_replicas(cfg.replicas, threads, [&](std::size_t r) {
    Rng rng = replica_rng(seed, r);
    const SimulationResult sim =
        cfg.model == PipelineModel::moran ? moran_simulate(cfg.params, cfg.horizon, check_times, rng)
                                          : cannings_simulate(cfg.params, cfg.lambda, cfg.horizon, check_times, rng);
    ReplicaOutcome out;
    for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
      const double delta = cfg.delta_grid[di];
      double sup = 0.0;
      std::size_t checks = 0, bad = 0;
      for (const Window& w : wins[di]) {
        std::vector<double> times;
        for (int j = 0; j < cfg.checks_per_window; ++j)
          times.push_back(w.start + (j + 0.5) / cfg.checks_per_window * (w.end - w.start));
        MutationSetTracker tracker(n);
        std::size_t next_check = 0;
        auto run_checks_before = [&](double limit) {
          for (; next_check < times.size() && times[next_check] < limit; ++next_check) {
            const auto idx = std::lower_bound(check_times.begin(), check_times.end(), times[next_check]) -
                             check_times.begin();
            const FmmSpace& snap = sim.snapshots[idx];
            for (int i = 0; i < n; ++i) {
              if (tracker.contains(i)) continue;
              for (int k = i + 1; k < n; ++k) {
                if (tracker.contains(k) || !(snap.space()(i, k) < delta)) continue;
                ++checks;
                if (snap.markmap()[i] != snap.markmap()[k]) ++bad;
              }
            }
          }
        };
        bool entered = false;
        for (const Event& e : sim.log) {
          if (e.time <= w.t0) continue;
          if (e.time >= w.end) break;
          if (!entered && e.time >= w.start) {
            sup = std::max(sup, static_cast<double>(tracker.count()) / n);
            entered = true;
          }
          run_checks_before(e.time);
          tracker.apply(e);
          if (e.time >= w.start) sup = std::max(sup, static_cast<double>(tracker.count()) / n);
        }
        if (!entered) sup = std::max(sup, static_cast<double>(tracker.count()) / n);
        run_checks_before(w.end + 1.0);
      }
      out.sup_fraction.push_back(sup);
      out.pair_checks.push_back(checks);
      out.violations.push_back(bad);
    }
    return out;
  });

  report.pass = true;
  for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
    PipelineDeltaReport d;
    d.delta = cfg.delta_grid[di];
    const double c = report.constant;
    d.a = std::sqrt(2.0 * cfg.horizon * c * d.delta / cfg.eps);
    d.bound = d.a > 0.0 ? 2.0 * cfg.horizon * c * d.delta / (d.a * d.a) : 0.0;
    for (const auto& o : outcomes) {
      // with a = 0 (theta = 0) nothing is ever exceeded: M stays empty
      d.exceedances += d.a > 0.0 && o.sup_fraction[di] >= d.a;
      d.pair_checks += o.pair_checks[di];
      d.violations += o.violations[di];
    }
    d.estimate = static_cast<double>(d.exceedances) / cfg.replicas;
    d.stderr_ = binomial_stderr(d.exceedances, cfg.replicas);
    d.pass = d.violations == 0 && d.estimate <= d.bound + 3.0 * d.stderr_;
    report.pass = report.pass && d.pass;
    report.per_delta.push_back(d);
  }
  return report;
}

}  // namespace mmlab
