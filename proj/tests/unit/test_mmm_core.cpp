#include <cmath>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "mmlab/counterexamples.hpp"
#include "mmlab/mmm_core.hpp"
#include "mmlab/serialization.hpp"

using namespace mmlab;

namespace {

MmmSpace triangle() {
  return test::mmm({{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}}, {{0, 0.1, 0.2}, {1, 0.5, 0.3}, {2, 0.9, 0.4}, {2, 0.2, 0.1}});
}

}  // namespace

TEST_SUITE("mmm_core") {
  TEST_CASE("validate") {
    CHECK(validate(triangle()).empty());
    const auto bad = test::mmm({{0, 1}, {2, 0}}, {{0, 0.5, 1.0}});
    CHECK_FALSE(validate(bad).empty());
  }

  TEST_CASE("equivalence") {
    const auto x = triangle();
    CHECK(equivalent(x, x));
    // relabel points 0 -> 2 -> 1 -> 0
    const auto y = test::mmm({{0, 1.5, 1}, {1.5, 0, 2}, {1, 2, 0}},
                             {{2, 0.1, 0.2}, {0, 0.5, 0.3}, {1, 0.9, 0.4}, {1, 0.2, 0.1}});
    CHECK(equivalent(x, y));
    const auto z = test::mmm({{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}}, {{0, 0.1, 0.3}, {1, 0.5, 0.2}, {2, 0.9, 0.4}, {2, 0.2, 0.1}});
    CHECK_FALSE(equivalent(x, z));
  }

  TEST_CASE("sampling distance matrices") {
    Rng rng(3);
    const auto one = test::mmm({{0}}, {{0, 0.4, 1.0}});
    const auto s = sample_distance_matrix(one, 3, rng);
    CHECK(s.dist == std::vector<double>{0, 0, 0});
    CHECK(s.marks == std::vector<double>{0.4, 0.4, 0.4});
    CHECK(sample_distance_matrix(one, 1, rng).dist.empty());

    const auto two = test::mmm({{0, 1}, {1, 0}}, {{0, 0.0, 0.5}, {1, 0.0, 0.5}});
    int ones = 0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) ones += sample_distance_matrix(two, 2, rng).dist[0] == 1.0;
    // P(r12 = 1) = 1/2 from the four equally likely ordered draws
    CHECK(std::abs(ones / double(draws) - 0.5) < 4.0 * std::sqrt(0.25 / draws));
  }

  TEST_CASE("mgp upper bound examples") {
    Rng rng(11);
    const double tol = 1e-9;
    const auto x = triangle();
    CHECK(mgp_upper(x, x, 10, rng, tol).bound <= 2 * tol);

    const auto u = test::mmm({{0}}, {{0, 0.0, 1.0}});
    const auto v = test::mmm({{0}}, {{0, 0.5, 1.0}});
    const double b = mgp_upper(u, v, 10, rng, tol).bound;
    CHECK(b >= 0.5 - tol);
    CHECK(b <= 0.5 + 2 * tol);

    const auto w = test::mmm({{0}}, {{0, 0.0, 0.6}});
    const double c = mgp_upper(u, w, 10, rng, tol).bound;
    CHECK(c >= 0.4 - tol);
    CHECK(c <= 0.4 + 2 * tol);
  }

  TEST_CASE("embedding rejects non-isometric cross distances") {
    const auto a = test::mmm({{0, 1}, {1, 0}}, {{0, 0, 0.5}, {1, 0, 0.5}});
    const auto b = test::mmm({{0}}, {{0, 0, 1.0}});
    CHECK_NOTHROW(embed(a, b, {0.5, 0.5}));
    CHECK_THROWS_AS(embed(a, b, {0.1, 0.1}), std::domain_error);
  }

  TEST_CASE("mgw diagnostic") {
    Rng rng(5);
    // two points at distance 1 versus 2, masses 1/2: the m=2 laws differ on
    // the off-diagonal entry, which is 1 or 2 with probability 1/2 each, and
    // the truncated metric sees those outcomes at distance min(1, 1) = 1.
    const auto a = test::mmm({{0, 1}, {1, 0}}, {{0, 0, 0.5}, {1, 0, 0.5}});
    const auto b = test::mmm({{0, 2}, {2, 0}}, {{0, 0, 0.5}, {1, 0, 0.5}});
    const double same = mgw_lower_diagnostic(a, a, 2, 4000, rng);
    const double diff = mgw_lower_diagnostic(a, b, 2, 4000, rng);
    CHECK(same < 0.06);
    CHECK(diff == doctest::Approx(0.5).epsilon(0.1));

    const auto m0 = test::mmm({{0}}, {{0, 0.0, 1.0}});
    const auto m1 = test::mmm({{0}}, {{0, 1.0, 1.0}});
    CHECK(mgw_lower_diagnostic(m0, m1, 2, 500, rng) == doctest::Approx(1.0));
  }

  TEST_CASE("dense fmm approximation") {
    const auto x = test::mmm({{0}}, {{0, 0.0, 0.5}, {0, 0.8, 0.5}});
    const auto f0 = dense_fmm_approx(x, 0);
    REQUIRE(f0.space().size() == 2);
    CHECK(f0.space()(0, 1) == doctest::Approx(std::min(1.0, 0.8)));
    const auto f3 = dense_fmm_approx(x, 3);
    CHECK(f3.space()(0, 1) == doctest::Approx(std::exp(-3.0)));

    // an fmm input comes back with distances distorted by at most e^-n
    const auto y = test::mmm({{0, 1}, {1, 0}}, {{0, 0.2, 0.5}, {1, 0.7, 0.5}});
    const auto g = dense_fmm_approx(y, 4);
    CHECK(equivalent(g.to_mmm(), y, std::exp(-4.0) + 1e-12));
    CHECK_FALSE(equivalent(g.to_mmm(), y, 1e-3));
  }

  TEST_CASE("text round trip") {
    const auto x = counterexample_ultrametric(3);
    CHECK(from_text(to_text(x)) == x);
    CHECK_THROWS(from_text("not a space"));
  }
}
