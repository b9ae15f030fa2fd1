#include "mmlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mmlab/counterexamples.hpp"
#include "mmlab/csv.hpp"
#include "mmlab/generator.hpp"
#include "mmlab/genealogy.hpp"
#include "mmlab/mark_diagnostics.hpp"
#include "mmlab/measures.hpp"
#include "mmlab/oracles/oracles.hpp"
#include "mmlab/parallel.hpp"
#include "mmlab/pipeline.hpp"
#include "mmlab/stats.hpp"
#include "mmlab/xi_process.hpp"

namespace mmlab {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  CsvTable table{{"empty"}};
};

std::string num(double v) { return format_number(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
std::size_t uniform_int(Rng& rng, std::size_t a, std::size_t b) {
  return std::uniform_int_distribution<std::size_t>(a, b)(rng);
}

using Coords = std::vector<std::pair<double, double>>;

std::shared_ptr<const FiniteSpace> plane_space(const Coords& c) {
  const std::size_t n = c.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(c[i].first - c[j].first, c[i].second - c[j].second);
  return std::make_shared<const FiniteSpace>(FiniteSpace::with_default_labels(std::move(d), n));
}

/// Points on a coarse grid so that equal distances (ties) are common.
Coords grid_points(Rng& rng, std::size_t n, int grid) {
  Coords c;
  for (std::size_t i = 0; i < n; ++i)
    c.emplace_back(static_cast<double>(uniform_int(rng, 0, grid)) / grid,
                   static_cast<double>(uniform_int(rng, 0, grid)) / grid);
  return c;
}

Coords free_points(Rng& rng, std::size_t n) {
  Coords c;
  for (std::size_t i = 0; i < n; ++i) c.emplace_back(uniform(rng, 0, 1), uniform(rng, 0, 1));
  return c;
}

FiniteMeasure rational_measure(Rng& rng, const std::shared_ptr<const FiniteSpace>& s, int denom) {
  std::vector<double> m(s->size());
  for (double& v : m) v = static_cast<double>(uniform_int(rng, 0, denom)) / denom;
  return FiniteMeasure(s, std::move(m));
}

FiniteMeasure sparse_measure(Rng& rng, const std::shared_ptr<const FiniteSpace>& s) {
  std::vector<double> m(s->size());
  for (double& v : m) v = uniform(rng, 0, 1) < 0.3 ? 0.0 : uniform(rng, 0, 1);
  return FiniteMeasure(s, std::move(m));
}

/// Random mmm-space on free plane points with 1..max_per_point atoms per point.
MmmSpace random_mmm(Rng& rng, std::size_t n, std::size_t max_per_point, const std::vector<double>& mark_pool,
                    Coords* coords = nullptr, std::size_t max_atoms = 1000) {
  Coords c = free_points(rng, n);
  std::vector<Atom> atoms;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t k = uniform_int(rng, 1, max_per_point);
    for (std::size_t j = 0; j < k && atoms.size() < max_atoms; ++j) {
      const double mark = mark_pool.empty() ? uniform(rng, 0, 1) : mark_pool[uniform_int(rng, 0, mark_pool.size() - 1)];
      atoms.push_back({p, mark, uniform(rng, 0.05, 1.0)});
    }
  }
  if (coords) *coords = c;
  return MmmSpace(plane_space(c), MarkSpace::unit_interval(), std::move(atoms));
}

// 1. Flow-based Prohorov distance against the direct definition.
Outcome prohorov_oracle(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"instance", "points", "flow", "oracle", "abs_diff"});
  double worst = 0.0;
  for (std::size_t i = 0; i < 200; ++i) {
    auto space = plane_space(grid_points(rng, uniform_int(rng, 1, 5), 4));
    const auto mu1 = rational_measure(rng, space, 6), mu2 = rational_measure(rng, space, 6);
    const double flow = prohorov_distance(mu1, mu2).distance;
    const double direct = oracle::prohorov_direct(mu1, mu2);
    worst = std::max(worst, std::abs(flow - direct));
    o.table.add_row({num(i), num(space->size()), num(flow), num(direct), num(std::abs(flow - direct))});
  }
  o.pass = worst <= 1e-6;
  o.detail = "max |flow - oracle| = " + num(worst);
  return o;
}

// 2. Symmetry and triangle inequality.
Outcome metric_axioms(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"instance", "d12", "d21", "d23", "d13", "d11", "symmetry_gap", "triangle_excess"});
  double worst_sym = 0.0, worst_tri = -1e300, worst_self = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    auto space = plane_space(free_points(rng, uniform_int(rng, 2, 6)));
    const auto a = sparse_measure(rng, space), b = sparse_measure(rng, space), c = sparse_measure(rng, space);
    const double d12 = prohorov_distance(a, b).distance, d21 = prohorov_distance(b, a).distance;
    const double d23 = prohorov_distance(b, c).distance, d13 = prohorov_distance(a, c).distance;
    const double d11 = prohorov_distance(a, a).distance;
    const double sym = std::abs(d12 - d21), tri = d13 - d12 - d23;
    worst_sym = std::max(worst_sym, sym);
    worst_tri = std::max(worst_tri, tri);
    worst_self = std::max(worst_self, d11);
    o.table.add_row({num(i), num(d12), num(d21), num(d23), num(d13), num(d11), num(sym), num(tri)});
  }
  o.pass = worst_sym <= 2e-9 && worst_tri <= 3e-9 && worst_self == 0.0;
  o.detail = "max asymmetry " + num(worst_sym) + ", max triangle excess " + num(worst_tri);
  return o;
}

// 3. Rectangular completion.
Outcome rectangular(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"instance", "eps", "delta", "removed", "dpr_after", "dominated", "mass_ok", "dpr_ok"});
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    auto space = plane_space(free_points(rng, uniform_int(rng, 2, 6)));
    const auto mu1 = sparse_measure(rng, space), mu2 = sparse_measure(rng, space);
    const double d = prohorov_distance(mu1, mu2).distance;
    const double delta = d + uniform(rng, 0.05, 0.3);
    // A witness strictly inside delta.
    const auto feas = prohorov_feasible(mu1, mu2, 0.5 * (d + delta));
    const double eps = uniform(rng, 0.0, mu1.total());
    std::vector<double> removal(space->size());
    double removed = 0.0;
    for (std::size_t x = 0; x < removal.size(); ++x) removed += removal[x] = mu1[x] * uniform(rng, 0, 1);
    const double scale = removed > eps ? eps / removed : 1.0;
    std::vector<double> sub(space->size());
    for (std::size_t x = 0; x < sub.size(); ++x) sub[x] = std::max(0.0, mu1[x] - removal[x] * scale);
    const FiniteMeasure mu1s(space, sub);
    bool dominated = false, mass_ok = false, dpr_ok = false;
    double after = 0.0;
    if (feas.feasible) {
      const auto mu2s = rectangular_completion(mu1, mu1s, mu2, *feas.witness, eps);
      dominated = mu2s.dominated_by(mu2);
      mass_ok = variational_distance(mu2, mu2s) <= eps + 1e-12;
      after = prohorov_distance(mu1s, mu2s).distance;
      dpr_ok = after < delta;
    }
    failures += !(dominated && mass_ok && dpr_ok);
    o.table.add_row({num(i), num(eps), num(delta), num(variational_distance(mu1, mu1s)), num(after), flag(dominated),
                     flag(mass_ok), flag(dpr_ok)});
  }
  o.pass = failures == 0;
  o.detail = num(failures) + " failing instances";
  return o;
}

// 4. beta vanishes on fmm-spaces and is 1/4 on both counterexamples.
Outcome beta_characterisation(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"case", "resolution", "beta"});
  bool ok = true;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = uniform_int(rng, 1, 8);
    std::vector<double> w(n), kappa(n);
    for (std::size_t p = 0; p < n; ++p) {
      w[p] = uniform(rng, 0, 1) < 0.2 ? 0.0 : uniform(rng, 0, 1);
      kappa[p] = uniform(rng, 0, 1);
    }
    const double b = beta(FmmSpace(plane_space(free_points(rng, n)), MarkSpace::unit_interval(), w, kappa).to_mmm());
    ok = ok && b == 0.0;
    o.table.add_row({"fmm" + std::to_string(i), num(n), num(b)});
  }
  double worst = 0.0;
  for (auto kind : {CounterexampleKind::square, CounterexampleKind::ultrametric})
    for (int res : {2, 4, 8}) {
      const double b = beta(counterexample(kind, res));
      worst = std::max(worst, std::abs(b - 0.25));
      o.table.add_row({kind == CounterexampleKind::square ? "square" : "ultrametric", num(std::size_t(res)), num(b)});
    }
  o.pass = ok && worst <= 1e-12;
  o.detail = std::string(ok ? "fmm beta all zero" : "nonzero fmm beta") + ", counterexample max |beta - 1/4| = " + num(worst);
  return o;
}

// 5. beta under mass removal and on D^{2 delta, eps}.
Outcome beta_estimates(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"instance", "beta", "beta_sub", "removed", "delta", "eps", "mass", "i_ok", "ii_ok"});
  std::size_t violations = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    const MmmSpace x = random_mmm(rng, uniform_int(rng, 1, 6), 3, {});
    std::vector<Atom> sub = x.atoms();
    double removed = 0.0;
    for (Atom& a : sub) {
      const double keep = uniform(rng, 0, 1) < 0.2 ? 0.0 : uniform(rng, 0, 1);
      removed += a.mass * (1.0 - keep);
      a.mass *= keep;
    }
    const double b = beta(x), b_sub = beta(MmmSpace(x.space_ptr(), x.marks(), sub));
    const bool i_ok = b <= b_sub + 2.0 * removed + 1e-12;

    const double delta = uniform(rng, 0.05, 0.5);
    double eps = 0.0;
    const auto& at = x.atoms();
    for (std::size_t p = 0; p < at.size(); ++p)
      for (std::size_t q = 0; q < at.size(); ++q)
        if (x.space()(at[p].point, at[q].point) < 2 * delta) eps = std::max(eps, std::abs(at[p].mark - at[q].mark));
    eps += uniform(rng, 1e-9, 0.2);
    const bool member = in_D(x, 2 * delta, eps).verdict;
    const bool ii_ok = member && b <= eps * x.total_mass() + 1e-12;
    violations += !i_ok + !ii_ok;
    o.table.add_row({num(i), num(b), num(b_sub), num(removed), num(delta), num(eps), num(x.total_mass()), flag(i_ok),
                     flag(ii_ok)});
  }
  o.pass = violations == 0;
  o.detail = num(violations) + " violations";
  return o;
}

// 6. Exact in_M against subset enumeration, and monotonicity.
Outcome membership_solver(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"instance", "atoms", "delta", "eps", "retained", "oracle", "verdict", "mono_ok"});
  const std::vector<double> pool{0.0, 0.25, 0.5, 1.0};
  std::size_t mismatches = 0, mono_failures = 0, mono_exercised = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const MmmSpace x = random_mmm(rng, uniform_int(rng, 2, 8), 3, pool, nullptr, 15);
    const double delta = uniform(rng, 0.05, 0.7), eps = uniform(rng, 0.05, 0.8);
    const auto rep = in_M(x, delta, eps);
    const double best = oracle::max_retained_mass(x, delta, eps);
    const bool oracle_verdict = best >= x.total_mass() - eps - 1e-12;
    const bool witness_ok = in_D(witness_space(x, rep), delta, eps).verdict;
    const bool match = std::abs(rep.retained_mass - best) <= 1e-12 && rep.verdict == oracle_verdict && witness_ok;
    mismatches += !match;

    const MmmSpace y = random_mmm(rng, uniform_int(rng, 2, 8), 3, pool, nullptr, 15);
    const double d1 = uniform(rng, 0.05, 0.7), e1 = uniform(rng, 0.3, 1.0);
    bool mono_ok = true;
    if (in_M(y, d1, e1).verdict) {
      ++mono_exercised;
      mono_ok = in_M(y, d1 * uniform(rng, 0.01, 1.0), e1 + uniform(rng, 0.0, 0.5)).verdict;
    }
    mono_failures += !mono_ok;
    o.table.add_row({num(i), num(x.support_atoms().size()), num(delta), num(eps), num(rep.retained_mass), num(best),
                     flag(rep.verdict), flag(mono_ok)});
  }
  o.pass = mismatches == 0 && mono_failures == 0;
  o.detail = num(mismatches) + " oracle mismatches, " + num(mono_failures) + " monotonicity failures (" +
             num(mono_exercised) + " implications exercised)";
  return o;
}

// 7. Perturbation lemma via an explicit common embedding in the plane.
Outcome perturbation(std::uint64_t seed, unsigned) {
  Rng rng(seed);
  Outcome o;
  o.table = CsvTable({"instance", "delta", "eps", "gap", "verdict"});
  std::size_t failures = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    Coords coords;
    const MmmSpace x = random_mmm(rng, uniform_int(rng, 3, 7), 2, {}, &coords);
    const double delta = uniform(rng, 0.1, 0.5);
    double eps = 0.1;
    while (!in_M(x, delta, eps).verdict) eps += 0.1;

    double spread = delta / 8;
    double gap = 0.0;
    std::optional<MmmSpace> xhat;
    for (int attempt = 0; attempt < 60; ++attempt, spread *= 0.5) {
      Coords moved = coords;
      for (auto& [a, b] : moved) {
        a += uniform(rng, -spread, spread);
        b += uniform(rng, -spread, spread);
      }
      std::vector<Atom> atoms = x.atoms();
      for (Atom& at : atoms) {
        at.mark = std::clamp(at.mark + uniform(rng, -spread, spread), 0.0, 1.0);
        at.mass *= 1.0 + uniform(rng, -spread, spread);
      }
      // Glue both point sets in the plane; atoms carry r + d.
      Coords both = coords;
      both.insert(both.end(), moved.begin(), moved.end());
      const auto plane = plane_space(both);
      const std::size_t n = coords.size();
      const std::size_t k = x.atoms().size();
      std::vector<double> d(4 * k * k);
      std::vector<std::pair<std::size_t, double>> nodes;
      for (const Atom& at : x.atoms()) nodes.emplace_back(at.point, at.mark);
      for (const Atom& at : atoms) nodes.emplace_back(n + at.point, at.mark);
      for (std::size_t p = 0; p < 2 * k; ++p)
        for (std::size_t q = 0; q < 2 * k; ++q)
          d[p * 2 * k + q] = p == q ? 0.0 : (*plane)(nodes[p].first, nodes[q].first) + std::abs(nodes[p].second - nodes[q].second);
      auto union_space = std::make_shared<const FiniteSpace>(FiniteSpace::with_default_labels(std::move(d), 2 * k));
      std::vector<double> m1(2 * k, 0.0), m2(2 * k, 0.0);
      for (std::size_t p = 0; p < k; ++p) {
        m1[p] = x.atoms()[p].mass;
        m2[k + p] = atoms[p].mass;
      }
      const double tol = 1e-9;
      gap = prohorov_distance(FiniteMeasure(union_space, m1), FiniteMeasure(union_space, m2), tol).distance + 2 * tol;
      if (gap < delta / 2) {
        xhat.emplace(plane_space(moved), x.marks(), std::move(atoms));
        break;
      }
    }
    const bool verdict = xhat && in_M(*xhat, delta - 2 * gap, eps + 2 * gap).verdict;
    failures += !verdict;
    o.table.add_row({num(i), num(delta), num(eps), num(gap), flag(verdict)});
  }
  o.pass = failures == 0;
  o.detail = num(failures) + " failures";
  return o;
}

// 8. Tail bound for the mutant frequency.
Outcome mutation_bound(std::uint64_t seed, unsigned threads) {
  Outcome o;
  o.table = CsvTable({"delta", "a", "replicas", "exceedances", "estimate", "stderr", "wilson_low", "wilson_high", "bound", "pass"});
  bool all = true;
  std::string detail;
  std::uint64_t k = 0;
  for (double delta : {0.05, 0.1, 0.2}) {
    const auto r = mutbound_verify(200, 1.0, 0.5, delta, 0.5, 2000, replica_seed(seed, k++), threads);
    all = all && r.pass;
    o.table.add_row({num(delta), num(0.5), num(r.replicas), num(r.exceedances), num(r.estimate), num(r.stderr_),
                     num(r.ci_low), num(r.ci_high), num(r.bound), flag(r.pass)});
    detail += (detail.empty() ? "" : "; ") + ("delta=" + num(delta) + ": " + num(r.estimate) + " vs " + num(r.bound));
  }
  o.pass = all;
  o.detail = detail;
  return o;
}

// 9. Moment bounds for the diffusion limit.
Outcome sde_moments(std::uint64_t seed, unsigned threads) {
  Outcome o;
  o.table = CsvTable({"t", "mean", "mean_se", "mean_bound", "second", "second_se", "second_bound", "pass"});
  const double gamma = 1.0, theta = 0.5, dt = 1e-3;
  const std::vector<double> ts{0.1, 0.5, 1.0};
  const auto samples = parallel_replicas(2000, threads, [&](std::size_t i) {
    Rng rng = replica_rng(seed, i);
    const auto path = sde_simulate(gamma, theta, 1.0, dt, rng);
    std::vector<double> v;
    for (double t : ts) v.push_back(path.value[static_cast<std::size_t>(std::lround(t / dt))]);
    return v;
  });
  const double c = moment_constant(gamma, theta);
  bool all = true;
  for (std::size_t j = 0; j < ts.size(); ++j) {
    std::vector<double> z, z2;
    for (const auto& s : samples) {
      z.push_back(s[j]);
      z2.push_back(s[j] * s[j]);
    }
    const double m1 = mean(z), s1 = standard_error(z), m2 = mean(z2), s2 = standard_error(z2);
    const bool pass = m1 <= theta * ts[j] + 3 * s1 && m2 <= c * ts[j] * ts[j] + 3 * s2;
    all = all && pass;
    o.table.add_row({num(ts[j]), num(m1), num(s1), num(theta * ts[j]), num(m2), num(s2), num(c * ts[j] * ts[j]), flag(pass)});
  }
  o.pass = all;
  o.detail = all ? "both moments within bounds at all t" : "a moment bound is exceeded";
  return o;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// 10. Merger rates.
Outcome lambda_rates(std::uint64_t, unsigned) {
  Outcome o;
  o.table = CsvTable({"measure", "N", "k", "rate", "expected", "abs_diff"});
  bool ok = true;
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n)
    for (int k = 2; k <= n; ++k) {
      const double king = lambda_rate(LambdaMeasure::kingman(), n, k);
      const double want = k == 2 ? 1.0 : 0.0;
      ok = ok && king == want;
      o.table.add_row({"kingman", num(std::size_t(n)), num(std::size_t(k)), num(king), num(want), num(std::abs(king - want))});
      const double leb = lambda_rate(LambdaMeasure::uniform(), n, k);
      const double beta_int = factorial(k - 2) * factorial(n - k) / factorial(n - 1);
      worst = std::max(worst, std::abs(leb - beta_int));
      o.table.add_row({"uniform", num(std::size_t(n)), num(std::size_t(k)), num(leb), num(beta_int), num(std::abs(leb - beta_int))});
    }
  o.pass = ok && worst <= 1e-8;
  o.detail = std::string(ok ? "Kingman exact" : "Kingman mismatch") + ", uniform max error " + num(worst);
  return o;
}

// 11. Generator against outcome enumeration, plus the drift bound.
Outcome generator_check(std::uint64_t, unsigned) {
  Outcome o;
  o.table = CsvTable({"check", "measure", "N", "x", "value", "reference", "abs_diff", "pass"});
  LambdaMeasure mixed = LambdaMeasure::dirac(0.3, 0.7) + LambdaMeasure::uniform(0.5);
  LambdaMeasure stepped;
  stepped.density_breaks = {0.0, 0.25, 1.0};
  stepped.density_values = {2.0, 0.4};
  const std::vector<std::pair<std::string, LambdaMeasure>> measures{
      {"kingman", LambdaMeasure::kingman()}, {"uniform", LambdaMeasure::uniform()}, {"mixed", mixed}, {"stepped", stepped}};
  const std::vector<std::pair<std::string, RealFunction>> fs{
      {"square", [](double x) { return x * x; }}, {"sin", [](double x) { return std::sin(3 * x); }},
      {"exp", [](double x) { return std::exp(-2 * x); }}};
  const double theta = 0.7;
  double worst = 0.0;
  for (const auto& [lname, lambda] : measures)
    for (int n = 2; n <= 12; ++n)
      for (int m = 0; m <= n; ++m) {
        const double x = static_cast<double>(m) / n;
        for (const auto& [fname, f] : fs) {
          const double exact = xi_lambda_generator_apply(f, x, n, lambda, theta);
          const double brute = oracle::generator_enumerate(f, x, n, lambda, theta);
          const double diff = std::abs(exact - brute);
          worst = std::max(worst, diff);
          if (fname == "square")
            o.table.add_row({"enumeration", lname, num(std::size_t(n)), num(x), num(exact), num(brute), num(diff), flag(diff <= 1e-10)});
        }
      }
  std::size_t bound_failures = 0;
  auto sq = [](double x) { return x * x; };
  for (const auto& [lname, lambda] : measures)
    for (int n : {5, 20, 50, 100})
      for (int m = 0; m <= n; m += std::max(1, n / 10)) {
        const double x = static_cast<double>(m) / n;
        const double value = xi_lambda_generator_apply(sq, x, n, lambda, theta);
        const double drift = theta * (1.0 - x) * 2.0 * x;
        const double bound = generator_drift_bound(x, n, lambda.total_mass(), theta, 2.0);
        const bool ok = std::abs(value - drift) <= bound + 1e-12;
        bound_failures += !ok;
        o.table.add_row({"drift_bound", lname, num(std::size_t(n)), num(x), num(std::abs(value - drift)), num(bound),
                         num(std::max(0.0, std::abs(value - drift) - bound)), flag(ok)});
      }
  o.pass = worst <= 1e-10 && bound_failures == 0;
  o.detail = "max enumeration error " + num(worst) + ", " + num(bound_failures) + " drift-bound failures";
  return o;
}

// 12. Mark-function pipeline on the Moran model.
Outcome pipeline_check(std::uint64_t seed, unsigned threads) {
  PipelineConfig cfg;
  cfg.model = PipelineModel::moran;
  cfg.params = MoranParams::standard(200, 1.0, 0.5, 2);
  cfg.delta_grid = {0.1};
  cfg.horizon = 1.0;
  cfg.eps = 0.25;
  cfg.replicas = 500;
  const auto rep = markfn_pipeline(cfg, seed, threads);
  Outcome o;
  o.table = CsvTable({"delta", "a", "bound", "replicas", "exceedances", "estimate", "stderr", "pair_checks", "violations", "pass"});
  for (const auto& d : rep.per_delta)
    o.table.add_row({num(d.delta), num(d.a), num(d.bound), num(cfg.replicas), num(d.exceedances), num(d.estimate),
                     num(d.stderr_), num(d.pair_checks), num(d.violations), flag(d.pass)});
  o.pass = rep.pass;
  const auto& d = rep.per_delta.front();
  o.detail = num(d.violations) + " type violations over " + num(d.pair_checks) + " close pairs; exceedance " +
             num(d.estimate) + " vs bound " + num(d.bound);
  return o;
}

// 13. Ultrametric preservation from an ultrametric start.
Outcome ultrametric_preservation(std::uint64_t seed, unsigned threads) {
  const int n = 20;
  const std::vector<double> times{0.0, 0.25, 0.5, 0.75, 1.0};
  struct Run {
    std::size_t snapshots = 0, bad = 0;
  };
  auto run = [&](bool cannings, std::size_t i) {
    Rng rng = replica_rng(seed, 2 * i + (cannings ? 1 : 0));
    auto p = MoranParams::standard(n, 1.0, 0.5, 3);
    const auto tree = coalescent_sample(n, LambdaMeasure::kingman(), rng);
    for (std::size_t e = 0; e < p.r0.size(); ++e) p.r0[e] = 2.0 * tree.space->matrix()[e];
    for (int& t : p.types0) t = static_cast<int>(uniform_int(rng, 0, 2));
    const auto sim = cannings ? cannings_simulate(p, LambdaMeasure::uniform(), 1.0, times, rng)
                              : moran_simulate(p, 1.0, times, rng);
    Run r;
    for (const auto& s : sim.snapshots) {
      ++r.snapshots;
      r.bad += !s.space().is_ultrametric(1e-12) || beta(s.to_mmm()) != 0.0;
    }
    return r;
  };
  Outcome o;
  o.table = CsvTable({"model", "run", "snapshots", "non_ultrametric"});
  std::size_t bad = 0;
  for (bool cannings : {false, true}) {
    const auto runs = parallel_replicas(100, threads, [&](std::size_t i) { return run(cannings, i); });
    for (std::size_t i = 0; i < runs.size(); ++i) {
      bad += runs[i].bad;
      o.table.add_row({cannings ? "cannings" : "moran", num(i), num(runs[i].snapshots), num(runs[i].bad)});
    }
  }
  o.pass = bad == 0;
  o.detail = num(bad) + " offending snapshots out of 1000";
  return o;
}

struct CriterionSpec {
  int id;
  const char* name;
  double limit;
  std::function<Outcome(std::uint64_t, unsigned)> run;
};

const std::vector<CriterionSpec>& registry() {
  static const std::vector<CriterionSpec> specs{
      {1, "prohorov-oracle", 10, prohorov_oracle},
      {2, "prohorov-metric-axioms", 10, metric_axioms},
      {3, "rectangular-completion", 30, rectangular},
      {4, "beta-characterisation", 5, beta_characterisation},
      {5, "beta-estimates", 30, beta_estimates},
      {6, "membership-solver", 60, membership_solver},
      {7, "perturbation", 60, perturbation},
      {8, "mutation-tail-bound", 300, mutation_bound},
      {9, "sde-moments", 120, sde_moments},
      {10, "lambda-rates", 1, lambda_rates},
      {11, "generator", 30, generator_check},
      {12, "markfn-pipeline", 600, pipeline_check},
      {13, "ultrametric-preservation", 120, ultrametric_preservation},
  };
  return specs;
}

std::string csv_name(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "criterion_%02d.csv", id);
  return buf;
}

std::string config_hash(int id, std::uint64_t seed) {
  return fnv1a_hex("acceptance criterion=" + std::to_string(id) + " seed=" + std::to_string(seed));
}

CriterionResult run_one(const CriterionSpec& spec, const AcceptanceOptions& opts, const fs::path& dir) {
  CriterionResult r;
  r.id = spec.id;
  r.name = spec.name;
  r.time_limit = spec.limit;
  const auto start = Clock::now();
  Outcome o = spec.run(replica_seed(opts.seed, static_cast<std::uint64_t>(spec.id)), opts.threads);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  r.checks_pass = o.pass;
  r.within_time = spec.limit <= 0 || r.seconds < spec.limit;
  r.detail = o.detail;
  if (!r.within_time) r.detail += " [over the " + num(spec.limit) + " s budget]";
  o.table.write((dir / csv_name(spec.id)).string(), config_hash(spec.id, opts.seed));
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "metric") return {1, 2, 3};
  if (suite == "diagnostics") return {4, 5, 6, 7};
  if (suite == "genealogy") return {8, 9, 10, 11, 12, 13};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
  throw std::invalid_argument("unknown acceptance suite '" + suite + "' (expected metric, diagnostics, genealogy or all)");
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return "CRITERION " + std::to_string(r.id) + " " + (r.pass() ? "PASS" : "FAIL") + " " + r.name + " (" + secs +
         " s) " + r.detail;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite, const AcceptanceOptions& opts) {
  const auto ids = suite_criteria(suite);
  fs::path dir = opts.out_dir.empty() ? fs::temp_directory_path() / ("mmlab-acceptance-" + std::to_string(opts.seed))
                                      : fs::path(opts.out_dir);
  fs::create_directories(dir);

  std::vector<CriterionResult> results;
  auto report = [&](const CriterionResult& r) {
    results.push_back(r);
    if (opts.progress) *opts.progress << format_result(r) << std::endl;
  };
  std::vector<int> ran;
  for (int id : ids) {
    if (id == 14) continue;
    report(run_one(registry()[id - 1], opts, dir));
    ran.push_back(id);
  }

  CsvTable summary({"criterion", "name", "checks_pass"});
  for (const auto& r : results) summary.add_row({std::to_string(r.id), r.name, flag(r.checks_pass)});
  summary.write((dir / "acceptance.csv").string(), fnv1a_hex("acceptance suite=" + suite + " seed=" + std::to_string(opts.seed)));

  if (std::find(ids.begin(), ids.end(), 14) != ids.end()) {
    // Determinism: run everything again into a sibling directory and compare bytes.
    CriterionResult r;
    r.id = 14;
    r.name = "determinism";
    const auto start = Clock::now();
    const fs::path again = dir / "rerun";
    fs::create_directories(again);
    std::vector<std::string> differing;
    CsvTable rerun_summary({"criterion", "name", "checks_pass"});
    for (int id : ran) {
      const auto rr = run_one(registry()[id - 1], opts, again);
      rerun_summary.add_row({std::to_string(rr.id), rr.name, flag(rr.checks_pass)});
      if (slurp(dir / csv_name(id)) != slurp(again / csv_name(id))) differing.push_back(csv_name(id));
    }
    rerun_summary.write((again / "acceptance.csv").string(),
                        fnv1a_hex("acceptance suite=" + suite + " seed=" + std::to_string(opts.seed)));
    if (slurp(dir / "acceptance.csv") != slurp(again / "acceptance.csv")) differing.push_back("acceptance.csv");
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.checks_pass = differing.empty();
    r.within_time = true;
    r.detail = differing.empty() ? "all " + std::to_string(ran.size() + 1) + " CSVs byte-identical on rerun"
                                 : std::to_string(differing.size()) + " CSVs differ, first " + differing.front();
    report(r);
  }
  return results;
}

}  // namespace mmlab
