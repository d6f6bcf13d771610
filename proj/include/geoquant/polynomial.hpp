#pragma once

// Exact multivariate polynomials over Q[i] in the phase-space coordinates
// (t, q1..qm, p0, p1..pm).

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geoquant/complex_rational.hpp"

namespace geoquant {

enum class VarKind { Time, Q, P0, P };

/// A coordinate. `k` is the 1-based fibre index for Q and P, 0 otherwise.
struct Variable {
  VarKind kind = VarKind::Time;
  int k = 0;

  static constexpr Variable t() { return {VarKind::Time, 0}; }
  static constexpr Variable q(int k) { return {VarKind::Q, k}; }
  static constexpr Variable p0() { return {VarKind::P0, 0}; }
  static constexpr Variable p(int k) { return {VarKind::P, k}; }

  bool is_momentum() const { return kind == VarKind::P0 || kind == VarKind::P; }

  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// Number of coordinates for fibre dimension m: t, q1..qm, p0, p1..pm.
constexpr std::size_t num_vars(int dim) { return 2 * static_cast<std::size_t>(dim) + 2; }
/// Position of `v` in the fixed ordering. Throws MismatchError if v.k is out of range.
std::size_t var_index(Variable v, int dim);
Variable var_at(std::size_t index, int dim);
std::string var_name(Variable v);

using Exponents = std::vector<unsigned>;

class Polynomial {
 public:
  using TermMap = std::map<Exponents, ComplexRational>;

  /// The zero polynomial in fibre dimension `dim` (>= 1).
  explicit Polynomial(int dim);

  static Polynomial constant(int dim, const ComplexRational& c);
  static Polynomial variable(int dim, Variable v);
  static Polynomial monomial(int dim, Exponents exponents, const ComplexRational& c);

  int dim() const { return dim_; }
  std::size_t num_vars() const { return geoquant::num_vars(dim_); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ComplexRational coefficient(const Exponents& e) const;
  /// The constant term as an exact value; zero if absent.
  ComplexRational constant_term() const;

  unsigned degree_in(Variable v) const;
  unsigned total_degree() const;
  /// Joint degree in p0, p1..pm.
  unsigned momentum_degree() const;
  bool depends_on(Variable v) const { return degree_in(v) > 0; }
  bool is_real() const;

  Polynomial conj() const;
  Polynomial pow(unsigned n) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const ComplexRational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const ComplexRational& c) { return a *= c; }
  friend Polynomial operator*(const ComplexRational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(const Polynomial& a);

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Adds c*x^e, pruning the term if the result cancels.
  void add_term(const Exponents& e, const ComplexRational& c);

 private:
  void require_same_dim(const Polynomial& o, const char* op) const;

  int dim_;
  TermMap terms_;
};

enum class ArithOp { Add, Sub, Mul };
Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op);

Polynomial diff(const Polynomial& a, Variable v);

/// Direct monomial sum with per-variable power tables. `point` is laid out
/// like the variable ordering and must have num_vars(dim) entries.
std::complex<double> eval(const Polynomial& a, std::span<const double> point);

/// Replacement expressions per variable; unmapped variables stay fixed.
using AffineMap = std::map<Variable, Polynomial>;

/// Composes `a` with an affine change of variables. Every image must have
/// total degree <= 1, otherwise DomainError.
Polynomial substitute_affine(const Polynomial& a, const AffineMap& map);

/// Parseable text (real coefficients) or display text with `I` for complex ones.
std::string to_string(const Polynomial& a);

/// Floating-point image of a Polynomial for repeated evaluation on grids.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const Polynomial& p);

  std::complex<double> operator()(std::span<const double> point) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    std::complex<double> coeff;
    std::vector<std::pair<std::size_t, unsigned>> powers;
  };
  std::vector<Term> terms_;
};

}  // namespace geoquant
