#pragma once

// Normal-ordered linear differential operators sum_a c_a(x) d^a with exact
// polynomial coefficients: every derivative sits to the right of every
// multiplication.

#include <map>
#include <string>

#include "geoquant/polynomial.hpp"

namespace geoquant {

/// Which coordinates an operator may differentiate in.
///  ConfigSpace  - t, q^k (Schroedinger operators on half-densities over Q);
///                 coefficients are momentum-free.
///  PhaseSpaceT  - every coordinate of T*Q (prequantum operators on T*Q).
///  PhaseSpaceV  - t, q^k, p_k (prequantum operators on V*Q; never d/dp0).
enum class VarSet { ConfigSpace, PhaseSpaceT, PhaseSpaceV };

std::string to_string(VarSet v);

class DiffOperator {
 public:
  /// Derivative multi-index over the full coordinate ordering of Polynomial.
  using Index = Exponents;
  using TermMap = std::map<Index, Polynomial>;

  /// The zero operator.
  DiffOperator(int dim, VarSet varset);

  static DiffOperator identity(int dim, VarSet varset);
  static DiffOperator multiplication(const Polynomial& c, VarSet varset);
  /// c * d/dv
  static DiffOperator derivative(Variable v, VarSet varset, const Polynomial& c);

  int dim() const { return dim_; }
  VarSet varset() const { return varset_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of d^index; zero polynomial if absent.
  Polynomial coefficient(const Index& index) const;
  /// Coefficient of the single first-order derivative d/dv.
  Polynomial coefficient(Variable v) const;
  /// Coefficient of the zeroth-order (multiplication) part.
  Polynomial multiplier() const;

  /// Highest |a| present.
  unsigned order() const;
  bool differentiates_in(Variable v) const;

  /// Adds c*d^index. Rejects directions outside the variable set and, for
  /// ConfigSpace, momentum-dependent coefficients.
  void add_term(const Index& index, const Polynomial& c);

  /// Action on a scalar function.
  Polynomial apply(const Polynomial& f) const;

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator& operator*=(const ComplexRational& c);

  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(const ComplexRational& c, DiffOperator a) { return a *= c; }
  friend DiffOperator operator-(DiffOperator a) { return a *= ComplexRational(-1); }

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.dim_ == b.dim_ && a.varset_ == b.varset_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const DiffOperator& o, const char* op) const;

  int dim_;
  VarSet varset_;
  TermMap terms_;
};

/// A o B, normal-ordered through d^a o c = sum_b binom(a, b) (d^b c) d^(a-b).
DiffOperator compose(const DiffOperator& a, const DiffOperator& b);
/// AB - BA.
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);
/// Formal adjoint for the pairing integral(rho1 * conj(rho2)):
/// (c d^a)^dagger = (-1)^|a| d^a o conj(c). ConfigSpace only.
DiffOperator formal_adjoint(const DiffOperator& a);

/// Replaces t by `t0` in every coefficient.
DiffOperator restrict_time(const DiffOperator& a, const Rational& t0);

std::string to_string(const DiffOperator& a);

}  // namespace geoquant
