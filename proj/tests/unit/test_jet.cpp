#include <doctest.h>

#include <cmath>

#include "bistab/jet.hpp"
#include "oracles.hpp"

using namespace bistab;

namespace {

void check_against_fd(const std::function<Jet3(const Jet3&)>& jf, const oracle::Fn& f, double x) {
  const Jet3 j = jf(Jet3::variable(x));
  CAPTURE(x);
  CHECK(j.value() == doctest::Approx(f(x)).epsilon(1e-14));
  CHECK(j.d1() == doctest::Approx(oracle::richardson(f, x, 1, 1e-2)).epsilon(1e-8));
  CHECK(j.d2() == doctest::Approx(oracle::richardson(f, x, 2, 1e-2)).epsilon(1e-6));
  CHECK(j.d3() == doctest::Approx(oracle::richardson(f, x, 3, 2e-2)).epsilon(1e-4));
}

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("elementary kernels") {
    for (double x : {-1.3, -0.2, 0.4, 1.7}) {
      check_against_fd([](const Jet3& u) { return exp(u); }, [](double t) { return std::exp(t); }, x);
      check_against_fd([](const Jet3& u) { return tanh(u); }, [](double t) { return std::tanh(t); }, x);
      check_against_fd([](const Jet3& u) { return atan(u); }, [](double t) { return std::atan(t); }, x);
      check_against_fd([](const Jet3& u) { return erf(u); }, [](double t) { return std::erf(t); }, x);
      check_against_fd([](const Jet3& u) { return gd(u); },
                       [](double t) { return 2 * std::atan(std::tanh(t / 2)); }, x);
    }
    for (double x : {0.3, 1.0, 2.9}) {
      check_against_fd([](const Jet3& u) { return log(u); }, [](double t) { return std::log(t); }, x);
      check_against_fd([](const Jet3& u) { return sqrt(u); }, [](double t) { return std::sqrt(t); }, x);
      check_against_fd([](const Jet3& u) { return pow(u, 2.5); }, [](double t) { return std::pow(t, 2.5); }, x);
      check_against_fd([](const Jet3& u) { return pow(u, -1.5); }, [](double t) { return std::pow(t, -1.5); }, x);
    }
  }

  TEST_CASE("arithmetic and chain rule") {
    auto jf = [](const Jet3& u) { return (u * u + 1.0) / (exp(u) + u); };
    auto f = [](double t) { return (t * t + 1) / (std::exp(t) + t); };
    check_against_fd(jf, f, 0.7);
    check_against_fd(jf, f, 2.1);
  }

  TEST_CASE("compose equals nested evaluation") {
    const double x = 0.8;
    const Jet3 inner = tanh(Jet3::variable(x));
    const Jet3 outer = exp(Jet3::variable(inner.c0));
    const Jet3 nested = exp(tanh(Jet3::variable(x)));
    const Jet3 c = compose(outer, inner);
    CHECK(c.c1 == doctest::Approx(nested.c1).epsilon(1e-14));
    CHECK(c.c2 == doctest::Approx(nested.c2).epsilon(1e-14));
    CHECK(c.c3 == doctest::Approx(nested.c3).epsilon(1e-14));
  }

  TEST_CASE("series reversion") {
    const double x = 0.6;
    const Jet3 fj = exp(Jet3::variable(x));
    const Jet3 inv = invert(fj, x);
    const Jet3 logj = log(Jet3::variable(fj.c0));
    CHECK(inv.c0 == doctest::Approx(x));
    CHECK(inv.c1 == doctest::Approx(logj.c1).epsilon(1e-13));
    CHECK(inv.c2 == doctest::Approx(logj.c2).epsilon(1e-13));
    CHECK(inv.c3 == doctest::Approx(logj.c3).epsilon(1e-13));
  }

  TEST_CASE("integer powers at zero") {
    const Jet3 sq = pow(Jet3::variable(0.0), 2.0);
    CHECK(sq.c0 == 0.0);
    CHECK(sq.c1 == 0.0);
    CHECK(sq.c2 == 1.0);
    CHECK(sq.c3 == 0.0);
    const Jet3 cube = pow(Jet3::variable(0.0), 3.0);
    CHECK(cube.c3 == 1.0);
    CHECK_FALSE(pow(Jet3::variable(0.0), -1.0).is_finite());
  }
}
