#include <cmath>

#include "doctest.h"
#include "mmlab/cadlag.hpp"
#include "mmlab/genealogy.hpp"
#include "mmlab/generator.hpp"
#include "mmlab/lambda_measure.hpp"
#include "mmlab/oracles/oracles.hpp"
#include "mmlab/stats.hpp"
#include "mmlab/xi_process.hpp"

using namespace mmlab;

namespace {

Event mutation(int k, double t) {
  Event e;
  e.time = t;
  e.kind = Event::Kind::mutate;
  e.source = k;
  e.type = 1;
  return e;
}

Event arrow(int from, int to, double t) {
  Event e;
  e.time = t;
  e.kind = Event::Kind::resample;
  e.source = from;
  e.target = to;
  return e;
}

}  // namespace

TEST_SUITE("genealogy_sim") {
  TEST_CASE("moran without mutation keeps types and is ultrametric") {
    Rng rng(8);
    auto p = MoranParams::standard(12, 1.0, 0.0);
    const auto res = moran_simulate(p, 2.0, {0.5, 1.0, 2.0}, rng);
    REQUIRE(res.snapshots.size() == 3);
    for (const auto& s : res.snapshots) {
      for (double k : s.markmap()) CHECK(k == s.markmap().front());
      CHECK(s.space().is_ultrametric(1e-12));
      CHECK(s.space().metric_violations(1e-12).empty());
    }
    CHECK_FALSE(res.log.empty());
  }

  TEST_CASE("moran is reproducible for a fixed seed") {
    auto p = MoranParams::standard(10, 1.0, 0.7);
    Rng a(42), b(42);
    const auto r1 = moran_simulate(p, 1.0, {1.0}, a);
    const auto r2 = moran_simulate(p, 1.0, {1.0}, b);
    CHECK(r1.snapshots[0].space() == r2.snapshots[0].space());
    CHECK(r1.snapshots[0].markmap() == r2.snapshots[0].markmap());
  }

  TEST_CASE("mutation set replay") {
    MutationSetTracker m(4);
    m.apply(arrow(0, 1, 0.1));
    CHECK(m.count() == 0);
    m.apply(mutation(2, 0.2));
    CHECK(m.members() == std::vector<int>{2});
    m.apply(arrow(2, 3, 0.3));
    CHECK(m.members() == std::vector<int>{2, 3});
    m.apply(arrow(0, 2, 0.4));
    CHECK(m.members() == std::vector<int>{3});

    const auto path = mutation_set_path({mutation(1, 0.5), arrow(0, 1, 0.7)}, 0.0, 3);
    REQUIRE(path.size() >= 2);
    CHECK(path.back().members.empty());
    const auto none = mutation_set_path({arrow(0, 1, 0.2), arrow(1, 2, 0.3)}, 0.0, 3);
    for (const auto& step : none) CHECK(step.members.empty());
  }

  TEST_CASE("genealogy state bookkeeping") {
    auto p = MoranParams::standard(3, 1.0, 0.0);
    GenealogyState g(p);
    g.advance(0.5);
    g.reproduce(0, {0, 1, 2});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(g.distance(i, j) == 0.0);
    g.advance(0.8);
    CHECK(g.distance(0, 2) == doctest::Approx(0.6));
  }

  TEST_CASE("lambda rates") {
    CHECK(lambda_rate(LambdaMeasure::uniform(), 4, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(lambda_rate(LambdaMeasure::kingman(), 5, 2) == doctest::Approx(1.0));
    CHECK(lambda_rate(LambdaMeasure::kingman(), 5, 3) == 0.0);
    // Dirac at y: y^(k-2) (1-y)^(N-k)
    CHECK(lambda_rate(LambdaMeasure::dirac(0.5), 4, 3) == doctest::Approx(0.5 * 0.5));
    CHECK(dust_free_diagnostic(LambdaMeasure::kingman()).divergent);
    CHECK(dust_free_diagnostic(LambdaMeasure::uniform()).divergent);
    const auto d = dust_free_diagnostic(LambdaMeasure::dirac(0.5));
    CHECK_FALSE(d.divergent);
    CHECK(d.integral == doctest::Approx(2.0));
  }

  TEST_CASE("cannings block of the whole population") {
    Rng rng(6);
    auto p = MoranParams::standard(6, 1.0, 0.0);
    const auto res = cannings_simulate(p, LambdaMeasure::dirac(1.0), 3.0, {3.0}, rng);
    bool found = false;
    for (const auto& e : res.log)
      if (e.kind == Event::Kind::block && e.block.size() == 6) found = true;
    CHECK(found);
    // after the last full block everything descends from one parent
    CHECK(res.snapshots[0].space().is_ultrametric(1e-12));
  }

  TEST_CASE("kingman pair coalescence time has mean one") {
    Rng rng(13);
    std::vector<double> h;
    for (int i = 0; i < 4000; ++i) h.push_back(coalescent_sample(2, LambdaMeasure::kingman(), rng).height);
    CHECK(std::abs(mean(h) - 1.0) <= 3.0 * standard_error(h));
  }

  TEST_CASE("generators") {
    const auto one = [](double) { return 1.0; };
    const auto id = [](double x) { return x; };
    const auto sq = [](double x) { return x * x; };
    for (int n : {2, 3, 4, 6}) {
      for (double theta : {0.0, 0.4}) {
        for (int i = 0; i <= n; ++i) {
          const double x = double(i) / n;
          for (const auto& lambda : {LambdaMeasure::kingman(), LambdaMeasure::uniform(), LambdaMeasure::dirac(0.3)}) {
            CHECK(std::abs(xi_lambda_generator_apply(one, x, n, lambda, theta)) < 1e-12);
            CHECK(xi_lambda_generator_apply(id, x, n, lambda, theta) == doctest::Approx(theta * (1 - x)));
            CHECK(xi_lambda_generator_apply(sq, x, n, lambda, theta) ==
                  doctest::Approx(oracle::generator_enumerate(sq, x, n, lambda, theta)));
          }
        }
      }
    }
    // N = 2, x = 1/2, gamma = 1, theta = 0: each direction fires at rate 1/2
    const auto down = [](double x) { return x < 0.25 ? 1.0 : 0.0; };
    CHECK(xi_moran_generator_apply(down, 0.5, 2, 1.0, 0.0) == doctest::Approx(0.5));
  }

  TEST_CASE("xi process") {
    Rng rng(1);
    const auto path = xi_moran_simulate(50, 1.0, 0.0, 1.0, rng);
    CHECK(path.sup_until(1.0) == 0.0);
    const auto z = sde_simulate(1.0, 0.0, 1.0, 1e-3, rng);
    CHECK(z.sup_until(1.0) == 0.0);
    const auto r = mutbound_verify(100, 1.0, 0.0, 0.1, 0.5, 100, 3, 1);
    CHECK(r.estimate == 0.0);
    CHECK(r.pass);
    CHECK(moment_constant(1.0, 0.5) == doctest::Approx(0.5));
  }

  TEST_CASE("cadlag modulus") {
    CHECK(cadlag_modulus(ScalarPath{{0.0, 1.0}, {0.3, 0.3}}, 0.5) == 0.0);
    CHECK(cadlag_modulus(ScalarPath{{0.0, 0.5, 2.0}, {0.0, 1.0, 1.0}}, 0.2) == 0.0);
    CHECK(cadlag_modulus(ScalarPath{{0.0, 0.5, 0.6, 2.0}, {0.0, 1.0, 2.0, 2.0}}, 0.2) == doctest::Approx(1.0));
    CHECK(cadlag_modulus(ScalarPath{{0.0, 0.5, 0.6, 2.0}, {0.0, 1.0, 2.0, 2.0}}, 0.05) == 0.0);
  }
}
