#include <doctest.h>

#include <cmath>

#include "bistab/convexity.hpp"
#include "bistab/errors.hpp"
#include "bistab/function.hpp"
#include "oracles.hpp"

using namespace bistab;

namespace {

Verdict verdict_of(const std::string& spec) { return certify_gamma(parse_function_spec(spec)).verdict; }

}  // namespace

TEST_SUITE("convexity") {
  TEST_CASE("verdict algebra") {
    CHECK(is_convex_class(Verdict::both));
    CHECK(is_concave_class(Verdict::both));
    CHECK_FALSE(is_convex_class(Verdict::neither));
    CHECK(dual(Verdict::strictly_gamma_convex) == Verdict::strictly_gamma_concave);
    CHECK(dual(Verdict::gamma_concave) == Verdict::gamma_convex);
    CHECK(dual(Verdict::both) == Verdict::both);
    CHECK(to_string(Verdict::strictly_gamma_convex) == "strictly_gamma_convex");
  }

  TEST_CASE("hill functions") {
    CHECK(verdict_of("hill(0,2,1)") == Verdict::strictly_gamma_convex);
    CHECK(verdict_of("hill(0,6,1)") == Verdict::strictly_gamma_convex);
    CHECK(verdict_of("hill(0.3,4,2)") == Verdict::strictly_gamma_convex);
    CHECK(verdict_of("hill(0,1,1)") == Verdict::both);
  }

  TEST_CASE("homographic and power examples") {
    CHECK(verdict_of("expr:(x+1)/(x+2)") == Verdict::both);
    CHECK(verdict_of("expr:(3*x+1)/(x+5)") == Verdict::both);
    CHECK(verdict_of("expr:x^0.5") == Verdict::strictly_gamma_concave);
    CHECK(verdict_of("power(-0.5)") == Verdict::strictly_gamma_concave);
    CHECK(verdict_of("power(1)") == Verdict::both);
    CHECK(verdict_of("power(-1)") == Verdict::both);
    CHECK(verdict_of("power(2)") == Verdict::strictly_gamma_convex);
    CHECK(verdict_of("power(-2)") == Verdict::strictly_gamma_convex);
    CHECK(verdict_of("power(3)") == Verdict::strictly_gamma_convex);
  }

  TEST_CASE("mixed signs give neither with a witness") {
    const auto c = certify_gamma(make_custom(parse("x + 0.3*tanh(4*(x-1))")));
    CHECK(c.verdict == Verdict::neither);
    REQUIRE(c.witness.has_value());
    CHECK(c.negative > 0);
    CHECK(c.positive > 0);
  }

  TEST_CASE("exponent other than one half") {
    // f = (x+1)^p: s = p^2 (p-1) (x+1)^{2p-4} ((p-2) - (alpha+1)(p-1)).
    const double p = 0.5;
    const auto f = make_custom(parse("(x+1)^0.5"));
    for (double alpha : {0.5, 1.0, 4.0, 8.0}) {
      const double s = p * p * (p - 1) * ((p - 2) - (alpha + 1) * (p - 1));
      const auto c = certify_gamma(f, alpha);
      CAPTURE(alpha);
      CHECK(c.alpha_exponent == alpha);
      CHECK(c.verdict == (s < 0 ? Verdict::strictly_gamma_convex : Verdict::strictly_gamma_concave));
    }
    CHECK(certify_gamma(f, 2.0).verdict == Verdict::both);
  }

  TEST_CASE("non-local two-point form") {
    auto r = oracle::rng(7);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 500; ++i) pairs.emplace_back(oracle::log_uniform(r, 1e-2, 1e2), oracle::log_uniform(r, 1e-2, 1e2));
    const auto hill = make_hill(0.0, 3.0, 1.0);
    const auto rep = check_nonlocal(hill, pairs);
    CHECK(rep.positive == 0);
    CHECK(nonlocal_consistent(rep, Verdict::strictly_gamma_convex));

    const auto homo = make_custom(parse("(2*x+1)/(x+3)"));
    const auto rh = check_nonlocal(homo, pairs);
    CHECK(std::abs(rh.max_relative) <= 1e-10);
    CHECK(std::abs(rh.min_relative) <= 1e-10);
    CHECK(nonlocal_consistent(rh, Verdict::both));

    const auto sq = make_power(0.5);
    const auto rs = check_nonlocal(sq, pairs);
    CHECK(rs.negative == 0);
    CHECK(nonlocal_consistent(rs, Verdict::strictly_gamma_concave));
  }

  TEST_CASE("composition keeps convexity") {
    const auto c = certify_composition(make_hill(0.0, 2.0, 1.0), make_logistic(1.0));
    CHECK(is_convex_class(c.verdict));
    CHECK_THROWS_AS(certify_composition(make_power(0.5), make_tanh()), ConfigError);
  }

  TEST_CASE("inverse duality") {
    const auto e = make_custom(parse("exp(x)"), Interval{-3.0, 3.0, true, true});
    const auto d = check_inverse_duality(e);
    CHECK(d.function.verdict == Verdict::strictly_gamma_convex);
    CHECK(d.inverse.verdict == Verdict::strictly_gamma_concave);
    CHECK(d.dual);

    const auto h = check_inverse_duality(make_hill(0.0, 2.0, 1.0), Interval{0.1, 5.0, true, true});
    CHECK(h.dual);
    CHECK(is_concave_class(h.inverse.verdict));

    CHECK_THROWS_AS(check_inverse_duality(make_tanh()), ConfigError);
    CHECK_THROWS_AS(check_inverse_duality(make_custom(parse("x^3"), Interval{0.0, 1.0, true, true})),
                    InversionError);
  }
}
