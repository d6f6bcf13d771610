#include <random>

#include "doctest.h"
#include "geoquant/diff_operator.hpp"
#include "geoquant/error.hpp"
#include "support.hpp"

using namespace geoquant;
using testing::P;

namespace {

const ComplexRational I = ComplexRational::i();

DiffOperator mult(const std::string& c, int dim = 1) { return DiffOperator::multiplication(P(c, dim), VarSet::ConfigSpace); }
DiffOperator d(Variable v, const std::string& c = "1", int dim = 1) {
  return DiffOperator::derivative(v, VarSet::ConfigSpace, P(c, dim));
}

DiffOperator random_config_op(int dim, std::mt19937_64& rng) {
  DiffOperator out(dim, VarSet::ConfigSpace);
  const unsigned n = 1 + static_cast<unsigned>(rng() % 3);
  for (unsigned i = 0; i < n; ++i) {
    DiffOperator::Index alpha(num_vars(dim), 0);
    alpha[0] = static_cast<unsigned>(rng() % 2);
    for (int k = 1; k <= dim; ++k) alpha[static_cast<std::size_t>(k)] = static_cast<unsigned>(rng() % 3);
    out.add_term(alpha, testing::random_poly(dim, rng, 2, false, 0, false));
  }
  return out;
}

}  // namespace

TEST_CASE("construction rules") {
  CHECK_THROWS_AS(DiffOperator::derivative(Variable::p(1), VarSet::ConfigSpace, P("1")), DomainError);
  CHECK_THROWS_AS(DiffOperator::derivative(Variable::p0(), VarSet::PhaseSpaceV, P("1")), DomainError);
  CHECK_NOTHROW(DiffOperator::derivative(Variable::p0(), VarSet::PhaseSpaceT, P("1")));
  CHECK_THROWS_AS(DiffOperator::multiplication(P("p1"), VarSet::ConfigSpace), DomainError);
  CHECK(DiffOperator::multiplication(P("0"), VarSet::ConfigSpace).is_zero());
  CHECK(d(Variable::q(1), "q1").coefficient(Variable::q(1)) == P("q1"));
  CHECK(d(Variable::q(1)).order() == 1);
  CHECK((d(Variable::q(1)) - d(Variable::q(1))).is_zero());
}

TEST_CASE("compose examples") {
  const auto dq = d(Variable::q(1));
  CHECK(compose(dq, mult("q1")) == d(Variable::q(1), "q1") + DiffOperator::identity(1, VarSet::ConfigSpace));
  const auto a = d(Variable::q(1), "t*q1^2") + mult("3");
  CHECK(compose(DiffOperator::identity(1, VarSet::ConfigSpace), a) == a);
  CHECK(compose(a, DiffOperator::identity(1, VarSet::ConfigSpace)) == a);
  const auto p = -I * dq;
  DiffOperator::Index second(num_vars(1), 0);
  second[1] = 2;
  DiffOperator minus_d2(1, VarSet::ConfigSpace);
  minus_d2.add_term(second, P("-1"));
  CHECK(compose(p, p) == minus_d2);
  CHECK_THROWS_AS(compose(dq, DiffOperator::identity(1, VarSet::PhaseSpaceT)), MismatchError);
  CHECK_THROWS_AS(compose(dq, d(Variable::q(1), "1", 2)), MismatchError);
}

TEST_CASE("commutator examples") {
  const auto p = -I * d(Variable::q(1));
  CHECK(commutator(p, mult("q1")) == -I * DiffOperator::identity(1, VarSet::ConfigSpace));
  CHECK(commutator(p, p).is_zero());
  CHECK(commutator(d(Variable::q(1)), d(Variable::t())).is_zero());
}

TEST_CASE("formal adjoint examples") {
  const auto dq = d(Variable::q(1));
  CHECK(formal_adjoint(-I * dq) == -I * dq);
  CHECK(formal_adjoint(mult("q1")) == mult("q1"));
  CHECK(formal_adjoint(dq) == -dq);
  CHECK(formal_adjoint(I * mult("q1")) == -I * mult("q1"));
  CHECK_THROWS_AS(formal_adjoint(DiffOperator::identity(1, VarSet::PhaseSpaceT)), DomainError);
}

TEST_CASE("apply acts on functions") {
  const auto op = d(Variable::q(1), "q1") + mult("2");
  CHECK(op.apply(P("q1^3")) == P("5*q1^3"));
  const auto dd = compose(d(Variable::q(1)), d(Variable::q(1)));
  CHECK(dd.apply(P("q1^4*t")) == P("12*q1^2*t"));
}

TEST_CASE("restrict_time") {
  const auto op = d(Variable::q(1), "t^2*q1") + mult("t + 1");
  CHECK(restrict_time(op, Rational(3)) == d(Variable::q(1), "9*q1") + mult("4"));
  CHECK(restrict_time(op, Rational(0)) == mult("1"));
}

TEST_CASE("to_string") {
  CHECK(to_string(DiffOperator(1, VarSet::ConfigSpace)) == "0");
  CHECK(!to_string(d(Variable::q(1), "q1")).empty());
}

TEST_CASE("operator algebra on random operators") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 1 + trial % 2;
    const auto a = random_config_op(dim, rng);
    const auto b = random_config_op(dim, rng);
    const auto c = random_config_op(dim, rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, b + c) == compose(a, b) + compose(a, c));
    CHECK(formal_adjoint(formal_adjoint(a)) == a);
    CHECK(formal_adjoint(compose(a, b)) == compose(formal_adjoint(b), formal_adjoint(a)));
    // Composition agrees with successive application on functions.
    const auto f = testing::random_poly(dim, rng, 4, false, 0, false);
    CHECK(compose(a, b).apply(f) == a.apply(b.apply(f)));
    // Jacobi for the commutator.
    const auto jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    CHECK(jac.is_zero());
  }
}
