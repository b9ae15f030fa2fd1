#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mmlab/errors.hpp"
#include "mmlab/measures.hpp"
#include "mmlab/oracles/oracles.hpp"

using namespace mmlab;

TEST_SUITE("measures") {
  TEST_CASE("variational distance") {
    const auto s = test::space({{0, 1}, {1, 0}});
    FiniteMeasure a(s, {0.3, 0.3}), b(s, {0.5, 0.5});
    CHECK(variational_distance(a, a) == 0.0);
    CHECK(variational_distance(a, b) == doctest::Approx(0.4));
    CHECK(variational_distance(FiniteMeasure(s, {1, 0}), FiniteMeasure(s, {0, 1})) == 1.0);
    const auto other = test::space({{0, 2}, {2, 0}});
    CHECK_THROWS_AS(variational_distance(a, FiniteMeasure(other, {0.3, 0.3})), std::domain_error);
  }

  TEST_CASE("restrict") {
    const auto s = test::space({{0, 1}, {1, 0}});
    FiniteMeasure mu(s, {0.3, 0.7});
    const auto r = restrict(mu, {true, false});
    CHECK(r[0] == 0.3);
    CHECK(r[1] == 0.0);
    CHECK(variational_distance(r, mu) == doctest::Approx(0.7));
    CHECK(restrict(mu, {false, false}).total() == 0.0);
    CHECK(restrict(mu, {true, true}).masses() == mu.masses());
  }

  TEST_CASE("feasibility of point masses") {
    const auto s = test::space({{0, 0.3}, {0.3, 0}});
    FiniteMeasure a(s, {1, 0}), b(s, {0, 1});
    CHECK_FALSE(prohorov_feasible(a, b, 0.2).feasible);
    const auto f = prohorov_feasible(a, b, 0.31);
    REQUIRE(f.feasible);
    REQUIRE(f.witness);
    CHECK((*f.witness)(0, 1) == doctest::Approx(1.0));
    CHECK(is_valid_witness(*f.witness, a, b, 0.31));
    CHECK(prohorov_feasible(a, a, 1e-6).feasible);
    CHECK_THROWS_AS(prohorov_feasible(a, b, 0.0), std::domain_error);
  }

  TEST_CASE("prohorov examples") {
    const double tol = 1e-9;
    const auto s = test::space({{0, 0.3}, {0.3, 0}});
    CHECK(prohorov_distance(FiniteMeasure(s, {1, 0}), FiniteMeasure(s, {0, 1}), tol).distance ==
          doctest::Approx(0.3).epsilon(1e-8));
    CHECK(prohorov_distance(FiniteMeasure(s, {1, 0}), FiniteMeasure(s, {0.6, 0}), tol).distance ==
          doctest::Approx(0.4).epsilon(1e-8));
    CHECK(prohorov_distance(FiniteMeasure(s, {0.2, 0.8}), FiniteMeasure(s, {0.2, 0.8}), tol).distance <= tol);
  }

  TEST_CASE("prohorov agrees with the direct definition on random instances") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 2 + trial % 5;
      std::vector<std::vector<double>> pts(n, std::vector<double>(2));
      for (auto& p : pts) p = {u(gen), u(gen)};
      std::vector<std::vector<double>> d(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
      const auto s = test::space(d);
      std::vector<double> m1(n), m2(n);
      for (std::size_t i = 0; i < n; ++i) {
        m1[i] = u(gen) < 0.2 ? 0.0 : u(gen) / n;
        m2[i] = u(gen) < 0.2 ? 0.0 : u(gen) / n;
      }
      FiniteMeasure a(s, m1), b(s, m2);
      const auto r = prohorov_distance(a, b, 1e-10);
      CHECK(std::abs(r.distance - oracle::prohorov_direct(a, b)) <= 1e-8);
      CHECK(is_valid_witness(r.witness, a, b, r.distance + 1e-10, 1e-9));
    }
  }

  TEST_CASE("rectangular completion") {
    const auto s = test::space({{0, 0.1, 1}, {0.1, 0, 1}, {1, 1, 0}});
    FiniteMeasure mu1(s, {0.5, 0.0, 0.5}), mu2(s, {0.0, 0.5, 0.5});
    const auto f = prohorov_feasible(mu1, mu2, 0.2);
    REQUIRE(f.witness);
    const auto same = rectangular_completion(mu1, mu1, mu2, *f.witness, 0.2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(same[i] == doctest::Approx(mu2[i]));
    const auto wide = prohorov_feasible(mu1, mu2, 1.5);
    REQUIRE(wide.witness);
    const auto none = rectangular_completion(mu1, FiniteMeasure::zero(s), mu2, *wide.witness, 1.5);
    const auto xi2 = wide.witness->second_marginal();
    for (std::size_t i = 0; i < 3; ++i) CHECK(none[i] == doctest::Approx(mu2[i] - xi2[i]));
    CHECK(variational_distance(none, mu2) <= mu1.total() + 1e-12);
  }

  TEST_CASE("metric violations") {
    CHECK(FiniteSpace(std::vector<std::vector<double>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}).metric_violations().empty());
    const auto asym = FiniteSpace(std::vector<std::vector<double>>{{0, 1}, {2, 0}}).metric_violations();
    REQUIRE_FALSE(asym.empty());
    CHECK(asym.front().kind == MetricViolation::Kind::symmetry);
    const auto tri = FiniteSpace(std::vector<std::vector<double>>{{0, 1, 2.5}, {1, 0, 1}, {2.5, 1, 0}}).metric_violations();
    REQUIRE(tri.size() >= 1);
    bool found = false;
    for (const auto& v : tri)
      if (v.kind == MetricViolation::Kind::triangle && std::abs(v.amount - 0.5) < 1e-12) found = true;
    CHECK(found);
  }
}
