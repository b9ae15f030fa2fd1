#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mmlab/counterexamples.hpp"
#include "mmlab/criteria.hpp"
#include "mmlab/errors.hpp"
#include "mmlab/mark_diagnostics.hpp"
#include "mmlab/mmm_core.hpp"
#include "mmlab/oracles/oracles.hpp"

using namespace mmlab;

namespace {

// Points 0, 1/(n-1), ..., 1 on a line with kappa(x) = slope * x.
FmmSpace lipschitz_line(std::size_t n, double slope) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<double> w(n, 1.0 / n), k(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = std::min(1.0, slope * i / (n - 1.0));
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(double(i) - double(j)) / (n - 1.0);
  }
  return FmmSpace(test::space(d), MarkSpace::unit_interval(), w, k);
}

MmmSpace random_space(std::mt19937_64& gen, std::size_t atoms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 1 + atoms / 2;
  std::vector<double> pos(n);
  for (auto& p : pos) p = u(gen);
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(pos[i] - pos[j]);
  std::vector<Atom> a;
  for (std::size_t i = 0; i < atoms; ++i) a.push_back({i % n, std::round(u(gen) * 4) / 4, u(gen) / atoms});
  return test::mmm(d, a);
}

}  // namespace

TEST_SUITE("mark_diagnostics") {
  TEST_CASE("beta of kernels") {
    const auto unit = MarkSpace::unit_interval();
    CHECK(beta_mark({{0.3, 1.0}}, unit) == 0.0);
    CHECK(beta_mark({{0.0, 0.5}, {1.0, 0.5}}, unit) == doctest::Approx(0.5));
    const auto far = MarkSpace::finite(FiniteSpace(std::vector<std::vector<double>>{{0, 3}, {3, 0}}));
    CHECK(beta_mark({{0.0, 0.5}, {1.0, 0.5}}, far) == doctest::Approx(0.5));
  }

  TEST_CASE("beta of spaces") {
    CHECK(beta(lipschitz_line(6, 1.0).to_mmm()) == 0.0);
    CHECK(beta(test::mmm({{0}}, {{0, 0.0, 0.5}, {0, 1.0, 0.5}})) == doctest::Approx(0.5));
    for (int res : {2, 4, 8}) {
      CHECK(std::abs(beta(counterexample_square(res)) - 0.25) <= 1e-12);
      CHECK(std::abs(beta(counterexample_ultrametric(res)) - 0.25) <= 1e-12);
    }
  }

  TEST_CASE("in_H") {
    CHECK(in_H(test::mmm({{0}}, {{0, 0.3, 1.0}}), Modulus::zero()).verdict);
    const auto two = test::mmm({{0, 1}, {1, 0}}, {{0, 0.0, 0.5}, {1, 1.0, 0.5}});
    CHECK(in_H(two, Modulus::linear(1.0)).verdict);
    const auto r = in_H(two, Modulus::linear(0.5));
    CHECK_FALSE(r.verdict);
    REQUIRE(r.violation);
    CHECK(r.violation->r == 1.0);
    CHECK(r.violation->d == 1.0);
    CHECK(in_H(lipschitz_line(9, 0.8).to_mmm(), Modulus::linear(0.8 + 1e-9)).verdict);
  }

  TEST_CASE("in_D") {
    CHECK(in_D(test::mmm({{0}}, {{0, 0.0, 0.5}, {0, 0.25, 0.5}}), 0.1, 0.25).verdict);
    CHECK(in_D(test::mmm({{0, 2}, {2, 0}}, {{0, 0.0, 0.5}, {1, 1.0, 0.5}}), 0.5, 0.1).verdict);
    CHECK_FALSE(in_D(test::mmm({{0}}, {{0, 0.0, 0.5}, {0, 1.0, 0.5}}), 0.1, 0.5).verdict);
    CHECK_THROWS_AS(in_D(test::mmm({{0}}, {{0, 0.0, 1.0}}), 0.0, 0.5), std::domain_error);
  }

  TEST_CASE("in_M examples") {
    const auto x = test::mmm({{0, 0.01, 0.01}, {0.01, 0, 0.01}, {0.01, 0.01, 0}}, {{0, 0.0, 1.0}, {1, 1.0, 1.0}, {2, 1.0, 1.0}});
    const auto r = in_M(x, 0.1, 0.5);
    CHECK(r.retained_mass == doctest::Approx(2.0));
    CHECK_FALSE(r.verdict);
    CHECK(in_M(x, 0.1, 1.0).verdict);
    const auto dx = lipschitz_line(5, 1.0).to_mmm();
    const auto full = in_M(dx, 0.3, 0.3);
    CHECK(full.verdict);
    CHECK(full.retained.size() == 5);
    CHECK(in_M(counterexample_square(4), 0.1, 0.6).verdict);
    const auto sq = in_M(counterexample_square(2), 0.1, 0.6);
    CHECK(sq.verdict);
    CHECK(sq.retained_mass == doctest::Approx(oracle::max_retained_mass(counterexample_square(2), 0.1, 0.6)));
  }

  TEST_CASE("in_M agrees with the subset oracle") {
    std::mt19937_64 gen(19);
    for (int trial = 0; trial < 80; ++trial) {
      const auto x = random_space(gen, 2 + trial % 13);
      for (double delta : {0.05, 0.2, 0.6})
        for (double eps : {0.1, 0.3}) {
          const auto r = in_M(x, delta, eps);
          CHECK(r.retained_mass == doctest::Approx(oracle::max_retained_mass(x, delta, eps)).epsilon(1e-12));
          CHECK(in_D(witness_space(x, r), delta, eps).verdict);
        }
    }
  }

  TEST_CASE("in_M capability limit") {
    const auto big = counterexample_square(12);
    CHECK_THROWS_AS(in_M(big, 0.5, 0.1), capability_error);
    const auto approx = in_M(big, 0.5, 0.1, true);
    CHECK(approx.approximate);
    CHECK(in_D(witness_space(big, approx), 0.5, 0.1).verdict);
  }

  TEST_CASE("in_Mh") {
    const auto grid = dyadic_grid(8);
    CHECK(in_Mh(lipschitz_line(9, 0.5).to_mmm(), Modulus::linear(0.5 + 1e-9), grid));
    CHECK(in_Mh(test::mmm({{0}}, {{0, 0.7, 1.0}}), Modulus::zero(), grid));
    CHECK_FALSE(in_Mh(counterexample_square(4), Modulus::linear(1.0), grid));
    CHECK_THROWS_AS(in_Mh(counterexample_square(2), Modulus::zero(), {}), std::domain_error);
  }

  TEST_CASE("rho lower bound") {
    std::vector<double> deltas, eps{1e-9, 0.01, 0.1};
    for (int i = 1; i <= 1000; ++i) deltas.push_back(i / 1000.0);
    const double root = (-3.0 + std::sqrt(11.0)) / 2.0;  // 2 delta (3 + delta) = 1
    const double v = rho_lower_bound(test::mmm({{0}}, {{0, 0.2, 1.0}}), 1, deltas, eps);
    CHECK(v <= root);
    CHECK(v >= root - 2e-3);
    CHECK(rho_lower_bound(test::mmm({{0}}, {{0, 0.0, 0.5}, {0, 1.0, 0.5}}), 2, deltas, eps) == 0.0);
    const auto line = lipschitz_line(5, 1.0).to_mmm();
    double last = 1.0;
    for (int m : {1, 4, 16, 64}) {
      const double r = rho_lower_bound(line, m, deltas, eps);
      CHECK(r <= last);
      last = r;
    }
    CHECK(last < 0.005);
  }

  TEST_CASE("fgp surrogate") {
    Rng rng(2);
    FgpOptions opts;
    opts.delta_grid = dyadic_grid(8);
    opts.eps_grid = {1e-9, 0.01, 0.1};
    const auto x = lipschitz_line(4, 1.0).to_mmm();
    CHECK(fgp_surrogate(x, x, 3, opts, rng) <= 1e-8);
    const auto a = test::mmm({{0}}, {{0, 0.0, 1.0}});
    const auto b = test::mmm({{0}}, {{0, 0.0, 0.6}});
    CHECK(fgp_surrogate(a, b, 3, opts, rng) >= 0.4 - 1e-9);
    Rng r1(4), r2(4);
    CHECK(fgp_surrogate(a, b, 0, opts, r1) == mgp_upper(a, b, opts.budget, r2).bound);
  }

  TEST_CASE("counterexamples") {
    CHECK(counterexample_ultrametric(3).space().is_ultrametric());
    for (auto kind : {CounterexampleKind::square, CounterexampleKind::ultrametric}) {
      const auto x = counterexample(kind, 3);
      CHECK(validate(x).empty());
      CHECK_FALSE(in_H(x, Modulus::linear(1e6)).verdict);
    }
    CHECK_THROWS_AS(parse_counterexample_kind("circle"), std::invalid_argument);
  }

  TEST_CASE("limit criterion via in_M") {
    std::vector<MmmSpace> dense, bad;
    const auto base = lipschitz_line(5, 1.0).to_mmm();
    for (int n = 0; n < 6; ++n) {
      dense.push_back(dense_fmm_approx(base, n).to_mmm());
      bad.push_back(counterexample_square(4));
    }
    const auto grid = dyadic_grid(5);
    // h(delta) = h'(3 delta) + 2 delta with h' the identity
    Modulus h({{0.0, 0.0}, {1.0, 5.0}}, Modulus::Tail::linear);
    CHECK(limit_criterion_theorem(dense, h, grid).supported);
    CHECK_FALSE(limit_criterion_theorem(bad, Modulus::linear(1.0), grid).supported);
    CHECK(tail_start(6) == 3);
  }

  TEST_CASE("limit criterion via sets") {
    const auto f = lipschitz_line(5, 1.0);
    std::vector<FmmSpace> seq(4, f);
    const auto grid = dyadic_grid(4);
    std::vector<std::size_t> all{0, 1, 2, 3, 4};
    std::vector<std::vector<std::vector<std::size_t>>> y(4, std::vector<std::vector<std::size_t>>(grid.size(), all));
    CHECK(limit_criterion_sets(seq, y, Modulus::linear(1.0 + 1e-9), grid).supported);
    CHECK_FALSE(limit_criterion_sets(seq, y, Modulus::linear(0.2), grid).supported);
  }

  TEST_CASE("diam criterion") {
    const auto f = lipschitz_line(5, 1.0);
    CHECK(diam_expression(f, {}, 0.1) == doctest::Approx(1.0));
    // below the grid spacing every ball is a single point; at 0.3 the balls
    // reach one neighbour each side, so kappa spreads 0.25 or 0.5
    CHECK(diam_expression(f, {0, 1, 2, 3, 4}, 0.2) == doctest::Approx(0.0));
    CHECK(diam_expression(f, {0, 1, 2, 3, 4}, 0.3) == doctest::Approx(0.4));

    // kappa_n(x) = min(nx, 1) on a grid with an atom at 0, Z = {0} u [delta v 1/n, 1]
    const std::size_t pts = 201;
    std::vector<std::vector<double>> d(pts, std::vector<double>(pts));
    for (std::size_t i = 0; i < pts; ++i)
      for (std::size_t j = 0; j < pts; ++j) d[i][j] = std::abs(double(i) - double(j)) / (pts - 1.0);
    const auto sp = test::space(d);
    const std::vector<double> grid{0.2, 0.1, 0.05, 0.025};
    std::vector<FmmSpace> seq;
    std::vector<std::vector<std::vector<std::size_t>>> z;
    for (int n = 1; n <= 12; ++n) {
      std::vector<double> w(pts, 0.5 / (pts - 1)), k(pts);
      w[0] = 0.5;
      for (std::size_t i = 0; i < pts; ++i) k[i] = std::min(1.0, n * (i / (pts - 1.0)));
      seq.emplace_back(sp, MarkSpace::unit_interval(), w, k);
      std::vector<std::vector<std::size_t>> per;
      for (double delta : grid) {
        std::vector<std::size_t> zs{0};
        for (std::size_t i = 1; i < pts; ++i)
          if (i / (pts - 1.0) >= std::max(delta, 1.0 / n) - 1e-12) zs.push_back(i);
        per.push_back(zs);
      }
      z.push_back(per);
    }
    const auto rep = diam_criterion(seq, z, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(rep.per_delta[j] <= 2.0 * grid[j] + 1e-12);
    CHECK(rep.supported);
  }
}
