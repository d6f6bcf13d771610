#include <string>

#include "doctest.h"
#include "geoquant/error.hpp"
#include "geoquant/parser.hpp"

using namespace geoquant;

namespace {

Polynomial parse(const std::string& text, int dim = 1) { return parse_polynomial(text, dim); }

std::size_t error_position(const std::string& text, int dim = 1) {
  try {
    parse(text, dim);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no ParseError for '" << text << "'");
  return 0;
}

Polynomial q1() { return Polynomial::variable(1, Variable::q(1)); }
Polynomial p1() { return Polynomial::variable(1, Variable::p(1)); }
Polynomial t() { return Polynomial::variable(1, Variable::t()); }

}  // namespace

TEST_CASE("literals and variables") {
  CHECK(parse("0").is_zero());
  CHECK(parse("  42 ") == Polynomial::constant(1, 42));
  CHECK(parse("3/6") == Polynomial::constant(1, Rational(1, 2)));
  CHECK(parse("0.25") == Polynomial::constant(1, Rational(1, 4)));
  CHECK(parse("1.5e2") == Polynomial::constant(1, 150));
  CHECK(parse("25e-2") == Polynomial::constant(1, Rational(1, 4)));
  CHECK(parse(".5") == Polynomial::constant(1, Rational(1, 2)));
  CHECK(parse("p0") == Polynomial::variable(1, Variable::p0()));
  CHECK(parse("q2", 2) == Polynomial::variable(2, Variable::q(2)));
}

TEST_CASE("oscillator Hamiltonian") {
  const Rational half(1, 2);
  CHECK(parse("0.5*p1^2 + 0.5*q1^2") == p1() * p1() * half + q1() * q1() * half);
}

TEST_CASE("expansion and precedence") {
  CHECK(parse("(q1+t)*(q1-t)") == q1() * q1() - t() * t());
  CHECK(parse("2*q1^2") == q1() * q1() * ComplexRational(2));
  CHECK(parse("-q1^2") == -(q1() * q1()));
  CHECK(parse("-(q1 - 1)") == Polynomial::constant(1, 1) - q1());
  CHECK(parse("q1 - -q1") == q1() * ComplexRational(2));
  CHECK(parse("(q1)^0") == Polynomial::constant(1, 1));
  CHECK(parse("2^10") == Polynomial::constant(1, 1024));
  CHECK(parse("q1*p1 - p1*q1").is_zero());
}

TEST_CASE("rejections carry positions") {
  CHECK(error_position("q1 + x") == 5);
  CHECK(error_position("q3", 2) == 0);
  CHECK(error_position("p1^-1") == 3);
  CHECK(error_position("q1^1.5") == 3);
  CHECK(error_position("q1^p1") == 3);
  CHECK(error_position("2q1") == 0);
  CHECK(error_position("(q1") == 3);
  CHECK(error_position("q1 +") == 4);
  CHECK(error_position("") == 0);
  CHECK(error_position("q1 q1") == 3);
  CHECK(error_position("1/0") == 0);
  CHECK(error_position("q01") == 0);
}

TEST_CASE("error messages name the problem") {
  try {
    parse("q1^-2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("non-negative integer") != std::string::npos);
  }
  try {
    parse("z");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("unknown variable 'z'") != std::string::npos);
  }
}
