#include <doctest.h>

#include <cmath>

#include "bistab/errors.hpp"
#include "bistab/hill_regions.hpp"
#include "bistab/regions.hpp"
#include "oracles.hpp"

using namespace bistab;

namespace {

SystemSpec toggle() { return {make_hill(0.0, 2.0, 1.0), make_hill(0.0, 6.0, 1.0), 1.0, 1.0}; }

}  // namespace

TEST_SUITE("regions") {
  TEST_CASE("log slope") {
    const auto h = make_hill(0.3, 3.0, 2.0);
    for (double z : {0.1, 1.0, 2.0, 9.0}) CHECK(log_slope(h, z) == doctest::Approx(oracle::hill_log_slope(0.3, 3.0, 2.0, z)));
  }

  TEST_CASE("supremum of the log slope") {
    const auto s = sup_log_slope(make_hill(0.25, 4.0, 1.0));
    CHECK_FALSE(s.tail_limit);
    CHECK(s.value == doctest::Approx(4.0 * hill_phi(0.25)).epsilon(1e-10));
    CHECK(s.argmax == doctest::Approx(std::pow(0.25, -1.0 / 8.0)).epsilon(1e-5));
    const auto t = sup_log_slope(make_hill(0.0, 2.0, 1.0));
    CHECK(t.value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(t.value <= 2.0);
  }

  TEST_CASE("empty region") {
    const SystemSpec s{make_hill(0.0, 1.0, 1.0), make_hill(0.0, 1.0, 1.0), 1.0, 1.0};
    const auto e = e1_region(s, 64);
    CHECK(e.empty());
    CHECK(e.boundary().empty());
    CHECK_THROWS_AS(map_G1(e, s), ConfigError);
  }

  TEST_CASE("region and its image") {
    const auto spec = toggle();
    const auto e = e1_region(spec, 256);
    REQUIRE_FALSE(e.empty());
    REQUIRE(e.boundary().size() == 1);
    for (const auto& p : e.boundary()[0].points) CHECK(e.product(p.x, p.y) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.contains(3.0, 3.0));
    CHECK_FALSE(e.contains(0.1, 0.1));

    const auto b = map_G1(e, spec);
    CHECK(b.provenance == Provenance::numeric_contour);
    CHECK(b.classify(10.0, 12.0) == Membership::inside);
    CHECK(b.classify(10.0, 3.0) == Membership::outside);
    CHECK(b.classify(0.2, 0.2) == Membership::outside);
  }

  TEST_CASE("parameter classification") {
    auto spec = toggle();
    spec.alpha = 10.0;
    spec.beta = 12.0;
    const auto c = classify_parameters(spec);
    CHECK(c.cls == ParameterClass::bistable);
    CHECK(c.count == 3);
    REQUIRE(c.closed_form_bistable.has_value());
    CHECK(*c.closed_form_bistable);
    spec.beta = 3.0;
    const auto m = classify_parameters(spec);
    CHECK(m.cls == ParameterClass::monostable);
    CHECK(m.count == 1);
    CHECK_FALSE(*m.closed_form_bistable);
  }

  TEST_CASE("sweeps do not depend on the thread count") {
    const auto alphas = make_grid(0.5, 50.0, 7, true);
    const auto betas = make_grid(0.5, 50.0, 6, true);
    const auto f = make_hill(0.0, 2.0, 1.0), g = make_hill(0.0, 6.0, 1.0);
    const auto one = region_sweep(f, g, alphas, betas, {}, 1);
    const auto many = region_sweep(f, g, alphas, betas, {}, 3);
    REQUIRE(one.cells.size() == 42);
    for (std::size_t k = 0; k < one.cells.size(); ++k) {
      CHECK(one.cells[k].cls == many.cells[k].cls);
      CHECK(one.cells[k].count == many.cells[k].count);
      CHECK(one.cells[k].min_jac_gap == many.cells[k].min_jac_gap);
    }
    CHECK(one.at(6, 5).cls == ParameterClass::bistable);
    CHECK(one.at(0, 0).cls == ParameterClass::monostable);
  }

  TEST_CASE("symmetric sweep follows the closed interval") {
    const auto lambdas = make_grid(0.0, 0.1, 3, false);
    const auto alphas = make_grid(0.5, 20.0, 9, true);
    const auto sw = symmetric_sweep(2.0, 1.0, lambdas, alphas, 2);
    for (std::size_t il = 0; il < lambdas.size(); ++il)
      for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
        const auto s = symmetric_region(lambdas[il], 2.0, 1.0);
        CAPTURE(lambdas[il]);
        CAPTURE(alphas[ia]);
        CHECK((sw.at(il, ia).cls == ParameterClass::bistable) == s.contains(alphas[ia]));
      }
  }

  TEST_CASE("grids") {
    const auto g = make_grid(0.1, 100.0, 4, true);
    REQUIRE(g.size() == 4);
    CHECK(g[1] == doctest::Approx(1.0));
    CHECK(g[3] == doctest::Approx(100.0));
    const auto l = make_grid(0.0, 1.0, 5, false);
    CHECK(l[2] == doctest::Approx(0.5));
    CHECK(make_grid(2.0, 2.0, 1, true).size() == 1);
    CHECK_THROWS_AS(make_grid(0.0, 1.0, 3, true), ConfigError);
  }
}
