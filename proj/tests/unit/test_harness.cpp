#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mmlab/acceptance.hpp"
#include "mmlab/csv.hpp"
#include "mmlab/parallel.hpp"
#include "mmlab/rng.hpp"
#include "mmlab/stats.hpp"

using namespace mmlab;

TEST_SUITE("harness") {
  TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(0.0) == "0");
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5}) CHECK(std::stod(format_number(v)) == v);
  }

  TEST_CASE("csv trailer") {
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    const auto text = t.render("abc");
    CHECK(text == "a,b\n1,2\n# config_hash=abc\n");
    CHECK_THROWS(t.add_row({"1"}));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
  }

  TEST_CASE("stats") {
    CHECK(mean({1, 2, 3}) == 2.0);
    CHECK(standard_error({1, 2, 3}) == doctest::Approx(1.0 / std::sqrt(3.0)));
    const auto [lo, hi] = wilson_interval(0, 100);
    CHECK(lo == 0.0);
    CHECK(hi > 0.0);
    CHECK(wilson_interval(100, 100).second == 1.0);
    CHECK(ks_statistic({0.1, 0.2}, {0.1, 0.2}) == 0.0);
    CHECK(ks_statistic({0.0}, {1.0}) == 1.0);
  }

  TEST_CASE("replicas are ordered and thread-count independent") {
    auto f = [](std::size_t i) { return replica_rng(9, i)(); };
    CHECK(parallel_replicas(17, 1, f) == parallel_replicas(17, 4, f));
    CHECK(replica_seed(1, 0) != replica_seed(1, 1));
  }

  TEST_CASE("acceptance suites") {
    CHECK(suite_criteria("metric").size() > 0);
    CHECK_THROWS_AS(suite_criteria("nope"), std::invalid_argument);
  }
}
