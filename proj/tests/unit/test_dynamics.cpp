#include <doctest.h>

#include <cmath>

#include "bistab/dynamics.hpp"
#include "bistab/errors.hpp"
#include "oracles.hpp"

using namespace bistab;

namespace {

SystemSpec toggle(double beta) { return {make_hill(0.0, 2.0, 1.0), make_hill(0.0, 6.0, 1.0), 10.0, beta}; }

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("matches a hand-written RK4") {
    const auto spec = toggle(12.0);
    const auto traj = integrate(spec, 2.0, 3.0, 1.0, 1e-2);
    oracle::Rk4 ref{[&](double y) { return spec.f.value(y); }, [&](double x) { return spec.g.value(x); }, spec.alpha,
                    spec.beta};
    double x = 2.0, y = 3.0;
    for (int i = 0; i < 100; ++i) ref.step(x, y, 1e-2);
    REQUIRE_FALSE(traj.samples.empty());
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.back().t == doctest::Approx(1.0));
    CHECK(traj.samples.back().x == doctest::Approx(x).epsilon(1e-12));
    CHECK(traj.samples.back().y == doctest::Approx(y).epsilon(1e-12));
  }

  TEST_CASE("trajectories settle on equilibria") {
    const auto mono = toggle(3.0);
    const auto t = integrate(mono, 0.0, 0.0);
    REQUIRE(t.terminal.has_value());
    CHECK(*t.terminal == 0);
    CHECK(t.samples.back().t < 200.0);
    CHECK(t.samples.size() <= 10000);

    const auto bi = toggle(12.0);
    const auto set = find_equilibria(bi);
    const auto hi_x = integrate(bi, 10.0, 0.01, set);
    const auto hi_y = integrate(bi, 0.01, 10.0, set);
    REQUIRE(hi_x.terminal.has_value());
    REQUIRE(hi_y.terminal.has_value());
    CHECK(*hi_x.terminal == 2);
    CHECK(*hi_y.terminal == 0);
  }

  TEST_CASE("separatrix of the toggle") {
    const auto spec = toggle(12.0);
    const auto sep = compute_separatrix(spec);
    const auto& pts = sep.curve.points;
    REQUIRE(pts.size() > 10);
    CHECK(sep.increasing);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i].x > pts[i - 1].x);
      CHECK(pts[i].y > pts[i - 1].y);
    }
    double nearest = 1e300;
    for (const auto& p : pts) nearest = std::min(nearest, std::hypot(p.x - sep.saddle.x_bar, p.y - sep.saddle.y_bar));
    CHECK(nearest < 1e-3);
    CHECK(sep.saddle.stability == Stability::saddle);
    CHECK(sep.above == 0);
    CHECK(sep.below == 2);
    CHECK(sep.label_of(0.01, 10.0) == 0);
    CHECK(sep.label_of(10.0, 0.01) == 2);

    const auto probes = basin_probe(spec, sep, 40);
    CHECK(probes.probes == 40);
    CHECK(probes.agreement() >= 0.99);
  }

  TEST_CASE("symmetric separatrix is the diagonal") {
    const auto h = make_hill(0.0, 2.0, 1.0);
    const SystemSpec spec{h, h, 3.0, 3.0};
    const auto sep = compute_separatrix(spec);
    for (const auto& p : sep.curve.points) CHECK(std::abs(p.x - p.y) <= 1e-9);
  }

  TEST_CASE("monostable systems have no separatrix") {
    CHECK_THROWS_AS(compute_separatrix(toggle(3.0)), NotBistableError);
  }
}
