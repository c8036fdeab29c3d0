#include <doctest.h>

#include <cmath>

#include "bistab/errors.hpp"
#include "bistab/expr.hpp"

using namespace bistab;

TEST_SUITE("expr") {
  TEST_CASE("precedence and associativity") {
    CHECK(eval(parse("1 + 2 * x"), 3.0) == doctest::Approx(7.0));
    CHECK(eval(parse("(1 + 2) * x"), 3.0) == doctest::Approx(9.0));
    CHECK(eval(parse("2 ^ 3 ^ 2"), 0.0) == doctest::Approx(512.0));
    CHECK(eval(parse("-x ^ 2"), 3.0) == doctest::Approx(-9.0));
    CHECK(eval(parse("x - 1 - 1"), 5.0) == doctest::Approx(3.0));
    CHECK(eval(parse("8 / 2 / 2"), 0.0) == doctest::Approx(2.0));
    CHECK(eval(parse("2 ^ -1"), 0.0) == doctest::Approx(0.5));
  }

  TEST_CASE("calls and numbers") {
    CHECK(eval(parse("exp(log(x))"), 2.5) == doctest::Approx(2.5));
    CHECK(eval(parse("pow(x, 0.5)"), 9.0) == doctest::Approx(3.0));
    CHECK(eval(parse("sqrt(x) + tanh(0) + atan(0) + erf(0)"), 4.0) == doctest::Approx(2.0));
    CHECK(eval(parse("1.5e2"), 0.0) == doctest::Approx(150.0));
    CHECK(eval(parse(".5 * x"), 4.0) == doctest::Approx(2.0));
  }

  TEST_CASE("printing round-trips the tree") {
    for (const char* src : {"x^2/(1+x^2)", "-(x+1)*exp(-x)", "pow(x,3)-2^x", "(x+1)/(x+2)", "-x^-2"}) {
      const Expr e = parse(src);
      CAPTURE(src);
      CHECK(parse(e.to_string()) == e);
    }
  }

  TEST_CASE("parse errors carry offsets") {
    try {
      (void)parse("1 + * x");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 4);
      CHECK_FALSE(e.expected().empty());
    }
    try {
      (void)parse("x + 1)");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 5);
    }
    try {
      (void)parse("2 * sinh(x)");
      FAIL("no error");
    } catch (const UnknownIdentifierError& e) {
      CHECK(e.offset() == 4);
      CHECK(e.identifier() == "sinh");
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("pow(2, x)"), ParseError);
    CHECK_THROWS_AS(parse("exp(x"), ParseError);
  }

  TEST_CASE("domain errors name the subexpression") {
    CHECK_THROWS_AS(eval(parse("log(x)"), -1.0), DomainError);
    CHECK_THROWS_AS(eval(parse("1 / x"), 0.0), DomainError);
    CHECK_THROWS_AS(eval(parse("x ^ 0.5"), -2.0), DomainError);
    try {
      (void)eval(parse("1 + log(x - 2)"), 1.0);
      FAIL("no error");
    } catch (const DomainError& e) {
      CHECK(e.subexpression().find("log") != std::string::npos);
      CHECK(e.point() == 1.0);
    }
  }

  TEST_CASE("jets of expressions") {
    const Expr e = parse("x^3 + 2*x");
    const Jet3 j = eval_jet3(e, 2.0);
    CHECK(j.value() == doctest::Approx(12.0));
    CHECK(j.d1() == doctest::Approx(14.0));
    CHECK(j.d2() == doctest::Approx(12.0));
    CHECK(j.d3() == doctest::Approx(6.0));
    CHECK(parse("x").depends_on_x());
    CHECK_FALSE(parse("2^3").depends_on_x());
  }
}
