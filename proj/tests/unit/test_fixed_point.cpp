#include <doctest.h>

#include <cmath>

#include "bistab/fixed_point.hpp"

using namespace bistab;

namespace {

const Interval kBox{0.0, 4.0, true, true};

}  // namespace

TEST_SUITE("fixed_point") {
  TEST_CASE("contraction") {
    const auto r = find_fixed_points([](double x) { return 0.5 * x + 1.0; }, Interval{0.0, 10.0, true, true});
    REQUIRE(r.size() == 1);
    CHECK(r[0].x == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r[0].lo <= r[0].x);
    CHECK(r[0].hi >= r[0].x);
    CHECK_FALSE(r[0].tangent);
  }

  TEST_CASE("three transversal roots") {
    const auto r = find_fixed_points([](double x) { return x + 0.1 * (x - 1) * (x - 2) * (x - 3); }, kBox);
    REQUIRE(r.size() == 3);
    CHECK(r[0].x == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r[1].x == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r[2].x == doctest::Approx(3.0).epsilon(1e-13));
  }

  TEST_CASE("root at the interval end") {
    const auto r = find_fixed_points([](double x) { return x * x; }, Interval{0.0, 3.0, true, true});
    REQUIRE(r.size() == 2);
    CHECK(r[0].x == 0.0);
    CHECK(r[1].x == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("tangency is reported") {
    const auto r = find_fixed_points([](double x) { return x + (x - 1.3) * (x - 1.3); }, kBox);
    REQUIRE(r.size() == 1);
    CHECK(r[0].tangent);
    CHECK(r[0].x == doctest::Approx(1.3).epsilon(1e-6));
  }

  TEST_CASE("close pair below the grid spacing") {
    const double eps = 1e-10;
    const auto r = find_fixed_points([&](double x) { return x + (x - 1.3) * (x - 1.3) - eps; }, kBox);
    REQUIRE(r.size() == 2);
    CHECK_FALSE(r[0].tangent);
    CHECK(r[0].x == doctest::Approx(1.3 - 1e-5).epsilon(1e-9));
    CHECK(r[1].x == doctest::Approx(1.3 + 1e-5).epsilon(1e-9));
  }

  TEST_CASE("roots near zero are resolved by the log grid") {
    const auto r = find_fixed_points([](double x) { return 1e-7 + 0.5 * x; }, kBox);
    REQUIRE(r.size() == 1);
    CHECK(r[0].x == doctest::Approx(2e-7).epsilon(1e-12));
  }

  TEST_CASE("no fixed point") {
    CHECK(find_fixed_points([](double x) { return x + 1.0; }, kBox).empty());
  }
}
