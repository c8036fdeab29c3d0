#include <doctest.h>

#include <cmath>

#include "bistab/cyclic.hpp"
#include "bistab/equilibria.hpp"
#include "bistab/errors.hpp"

#include <Eigen/Dense>

using namespace bistab;

namespace {

CyclicSpec ring(std::initializer_list<const char*> specs) {
  CyclicSpec s;
  for (const char* t : specs) s.functions.push_back(parse_function_spec(t));
  return s;
}

}  // namespace

TEST_SUITE("cyclic") {
  TEST_CASE("two species reduce to the planar system") {
    const auto spec = ring({"10*hill(0,2,1)", "12*hill(0,6,1)"});
    const auto r = cyclic_equilibria(spec);
    const auto planar = find_equilibria(SystemSpec{make_hill(0.0, 2.0, 1.0), make_hill(0.0, 6.0, 1.0), 10.0, 12.0});
    REQUIRE(r.equilibria.size() == planar.size());
    CHECK(r.decreasing_count == 2);
    for (const auto& e : r.equilibria) {
      bool matched = false;
      for (const auto& p : planar.equilibria)
        matched = matched || (std::abs(e.x[0] - p.x_bar) <= 1e-10 && std::abs(e.x[1] - p.y_bar) <= 1e-10);
      CHECK(matched);
    }
  }

  TEST_CASE("bistable three-ring") {
    const auto spec = ring({"3*hill(0,4,1)", "3*hill(0,4,1)", "expr:x"});
    const auto r = cyclic_equilibria(spec);
    REQUIRE(r.equilibria.size() == 3);
    CHECK(r.equilibria[0].stability == CyclicStability::stable);
    CHECK(r.equilibria[1].stability == CyclicStability::unstable);
    CHECK(r.equilibria[1].derivative_product > 1.0);
    CHECK(r.equilibria[2].stability == CyclicStability::stable);
    for (const auto& e : r.equilibria) {
      const auto& f = spec.functions;
      CHECK(e.x[0] == doctest::Approx(f[0].value(e.x[2])));
      CHECK(e.x[1] == doctest::Approx(f[1].value(e.x[0])));
      CHECK(e.x[2] == doctest::Approx(f[2].value(e.x[1])));
    }
  }

  TEST_CASE("odd number of repressors") {
    const auto r = cyclic_equilibria(ring({"3*hill(0,2,1)", "3*hill(0,2,1)", "3*hill(0,2,1)"}));
    CHECK(r.decreasing_count == 3);
    CHECK(r.equilibria.size() == 1);
    const auto big = cyclic_equilibria(ring({"50*hill(0,8,1)", "50*hill(0,8,1)", "50*hill(0,8,1)"}));
    CHECK(big.equilibria.size() == 1);
    CHECK(big.equilibria[0].stability == CyclicStability::unstable);
  }

  TEST_CASE("eigenvalue formula against a dense solve") {
    for (auto specs : {ring({"3*hill(0,4,1)", "3*hill(0,4,1)", "expr:x"}),
                       ring({"50*hill(0,8,1)", "50*hill(0,8,1)", "50*hill(0,8,1)"}),
                       ring({"4*hill(0,3,1)", "2*hill(0,2,1)", "expr:x/(1+x)", "3*hill(5,2,1)"})}) {
      const auto r = cyclic_equilibria(specs);
      const std::size_t n = specs.functions.size();
      for (const auto& e : r.equilibria) {
        Eigen::MatrixXd J = -Eigen::MatrixXd::Identity(n, n);
        J(0, n - 1) = specs.functions[0].derivative(e.x[n - 1]);
        for (std::size_t i = 1; i < n; ++i) J(i, i - 1) = specs.functions[i].derivative(e.x[i - 1]);
        using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
        const auto ev = Eigen::EigenSolver<MatrixL>(J.cast<long double>()).eigenvalues();
        double dominant = -1e300;
        for (Eigen::Index k = 0; k < ev.size(); ++k) dominant = std::max(dominant, static_cast<double>(ev[k].real()));
        CHECK(e.dominant_real == doctest::Approx(dominant).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("certificates") {
    const auto bi = cyclic_certificate(ring({"3*hill(0,2,1)", "3*hill(0,3,1)", "hill(4,2,1)"}));
    CHECK(bi.verdict == CyclicVerdict::at_most_bistable);
    CHECK(bi.decreasing_count == 2);
    CHECK(bi.count <= 3);

    const auto none = cyclic_certificate(ring({"3*hill(0,2,1)", "3*hill(0,2,1)", "expr:x + 0.3*tanh(4*(x-1))"}));
    CHECK(none.verdict == CyclicVerdict::no_guarantee);

    const auto concave = cyclic_certificate(ring({"expr:x^0.5 + 1", "expr:2*x/(1+x)"}));
    CHECK(concave.verdict == CyclicVerdict::unique_equilibrium);
    CHECK(concave.count == 1);

    const auto odd = cyclic_certificate(ring({"3*hill(0,2,1)", "expr:x"}));
    CHECK(odd.verdict == CyclicVerdict::unique_equilibrium);
  }

  TEST_CASE("input errors") {
    CHECK_THROWS_AS(cyclic_equilibria(ring({"hill(0,2,1)"})), ConfigError);
    CHECK_THROWS_AS(cyclic_equilibria(ring({"expr:x", "power(2)"})), ConfigError);
    CHECK_THROWS_AS(cyclic_equilibria(ring({"expr:x+1", "expr:2*x"})), ConfigError);
  }
}
