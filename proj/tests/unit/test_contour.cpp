#include <doctest.h>

#include <cmath>

#include "bistab/contour.hpp"

using namespace bistab;

namespace {

GridField circle_field(std::size_t n) {
  GridField g;
  g.field = [](double x, double y) { return 1.0 - x * x - y * y; };
  for (std::size_t i = 0; i < n; ++i) {
    g.xs.push_back(-2.0 + 4.0 * i / (n - 1));
    g.ys.push_back(-2.0 + 4.0 * i / (n - 1));
  }
  for (double y : g.ys)
    for (double x : g.xs) g.values.push_back(g.field(x, y));
  return g;
}

double polygon_area(const std::vector<Point2>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& v = p[(i + 1) % p.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * std::abs(a);
}

}  // namespace

TEST_SUITE("contour") {
  TEST_CASE("unit circle") {
    const auto g = circle_field(41);
    const auto lines = marching_squares(g);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].closed);
    CHECK(lines[0].points.size() > 40);
    for (const auto& p : lines[0].points) CHECK(std::hypot(p.x, p.y) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("clipped cells tile the inside") {
    const auto g = circle_field(81);
    double area = 0.0;
    for (std::size_t j = 0; j + 1 < g.ys.size(); ++j)
      for (std::size_t i = 0; i + 1 < g.xs.size(); ++i)
        for (const auto& poly : clip_cell(g, i, j)) area += polygon_area(poly);
    CHECK(area == doctest::Approx(M_PI).epsilon(2e-3));
  }

  TEST_CASE("open curve leaving the grid") {
    GridField g;
    g.field = [](double x, double y) { return y - x; };
    for (int i = 0; i < 11; ++i) {
      g.xs.push_back(i * 0.1 + 0.05);
      g.ys.push_back(i * 0.1);
    }
    for (double y : g.ys)
      for (double x : g.xs) g.values.push_back(g.field(x, y));
    const auto lines = marching_squares(g);
    REQUIRE(lines.size() == 1);
    CHECK_FALSE(lines[0].closed);
    for (const auto& p : lines[0].points) CHECK(p.y == doctest::Approx(p.x).epsilon(1e-12));
  }

  TEST_CASE("saddle cell uses the centre") {
    GridField g;
    g.field = [](double x, double y) { return x * y + 0.01; };
    g.xs = {-1.0, 1.0};
    g.ys = {-1.0, 1.0};
    for (double y : g.ys)
      for (double x : g.xs) g.values.push_back(g.field(x, y));
    const auto lines = marching_squares(g);
    CHECK(lines.size() == 2);
    const auto polys = clip_cell(g, 0, 0);
    CHECK(polys.size() == 1);
  }
}
