#include "geoquant/diff_operator.hpp"

#include <numeric>
#include <sstream>
#include <vector>

#include "geoquant/error.hpp"

namespace geoquant {
namespace {

bool direction_allowed(Variable v, VarSet set) {
  switch (set) {
    case VarSet::ConfigSpace:
      return !v.is_momentum();
    case VarSet::PhaseSpaceT:
      return true;
    case VarSet::PhaseSpaceV:
      return v.kind != VarKind::P0;
  }
  return false;
}

unsigned weight(const DiffOperator::Index& a) { return std::accumulate(a.begin(), a.end(), 0U); }

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// Advances `gamma` through all multi-indices <= `alpha` (odometer order).
bool next_below(DiffOperator::Index& gamma, const DiffOperator::Index& alpha) {
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] < alpha[i]) {
      ++gamma[i];
      return true;
    }
    gamma[i] = 0;
  }
  return false;
}

Polynomial derivative_of(const Polynomial& c, const DiffOperator::Index& gamma) {
  Polynomial out = c;
  for (std::size_t i = 0; i < gamma.size() && !out.is_zero(); ++i) {
    for (unsigned j = 0; j < gamma[i]; ++j) out = diff(out, var_at(i, c.dim()));
  }
  return out;
}

}  // namespace

std::string to_string(VarSet v) {
  switch (v) {
    case VarSet::ConfigSpace:
      return "ConfigSpace";
    case VarSet::PhaseSpaceT:
      return "PhaseSpaceT";
    case VarSet::PhaseSpaceV:
      return "PhaseSpaceV";
  }
  return "?";
}

DiffOperator::DiffOperator(int dim, VarSet varset) : dim_(dim), varset_(varset) {
  if (dim < 1) throw DomainError("operator dimension must be positive");
}

DiffOperator DiffOperator::identity(int dim, VarSet varset) {
  return multiplication(Polynomial::constant(dim, 1), varset);
}

DiffOperator DiffOperator::multiplication(const Polynomial& c, VarSet varset) {
  DiffOperator out(c.dim(), varset);
  out.add_term(Index(num_vars(c.dim()), 0), c);
  return out;
}

DiffOperator DiffOperator::derivative(Variable v, VarSet varset, const Polynomial& c) {
  DiffOperator out(c.dim(), varset);
  Index a(num_vars(c.dim()), 0);
  a[var_index(v, c.dim())] = 1;
  out.add_term(a, c);
  return out;
}

Polynomial DiffOperator::coefficient(const Index& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Polynomial(dim_) : it->second;
}

Polynomial DiffOperator::coefficient(Variable v) const {
  Index a(num_vars(dim_), 0);
  a[var_index(v, dim_)] = 1;
  return coefficient(a);
}

Polynomial DiffOperator::multiplier() const { return coefficient(Index(num_vars(dim_), 0)); }

unsigned DiffOperator::order() const {
  unsigned out = 0;
  for (const auto& [a, c] : terms_) out = std::max(out, weight(a));
  return out;
}

bool DiffOperator::differentiates_in(Variable v) const {
  const std::size_t idx = var_index(v, dim_);
  for (const auto& [a, c] : terms_) {
    if (a[idx] > 0) return true;
  }
  return false;
}

void DiffOperator::add_term(const Index& index, const Polynomial& c) {
  if (c.dim() != dim_) throw MismatchError("operator coefficient has wrong dimension");
  if (index.size() != num_vars(dim_)) throw MismatchError("derivative multi-index has wrong length");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < index.size(); ++i) {
    const Variable v = var_at(i, dim_);
    if (index[i] > 0 && !direction_allowed(v, varset_)) {
      throw DomainError("derivative in " + var_name(v) + " not allowed on " + to_string(varset_));
    }
  }
  if (varset_ == VarSet::ConfigSpace && c.momentum_degree() > 0) {
    throw DomainError("ConfigSpace operator coefficients must not depend on momenta");
  }
  auto [it, inserted] = terms_.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial DiffOperator::apply(const Polynomial& f) const {
  if (f.dim() != dim_) throw MismatchError("apply: dimension mismatch");
  Polynomial out(dim_);
  for (const auto& [a, c] : terms_) out += c * derivative_of(f, a);
  return out;
}

void DiffOperator::require_compatible(const DiffOperator& o, const char* op) const {
  if (dim_ != o.dim_) throw MismatchError(std::string(op) + ": dimension mismatch");
  if (varset_ != o.varset_) {
    throw MismatchError(std::string(op) + ": variable set mismatch (" + to_string(varset_) + " vs " +
                        to_string(o.varset_) + ")");
  }
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  require_compatible(o, "add");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  require_compatible(o, "sub");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

DiffOperator& DiffOperator::operator*=(const ComplexRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, coeff] : terms_) coeff *= c;
  return *this;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
  if (a.dim() != b.dim() || a.varset() != b.varset()) {
    throw MismatchError("compose: operators act on different spaces");
  }
  DiffOperator out(a.dim(), a.varset());
  const std::size_t n = num_vars(a.dim());
  for (const auto& [alpha, c] : a.terms()) {
    for (const auto& [beta, d] : b.terms()) {
      DiffOperator::Index gamma(n, 0);
      do {
        Polynomial dd = derivative_of(d, gamma);
        if (dd.is_zero()) continue;
        mpz_class weight_factor = 1;
        DiffOperator::Index rest(n);
        for (std::size_t i = 0; i < n; ++i) {
          weight_factor *= binomial(alpha[i], gamma[i]);
          rest[i] = alpha[i] - gamma[i] + beta[i];
        }
        out.add_term(rest, c * dd * ComplexRational(Rational(weight_factor)));
      } while (next_below(gamma, alpha));
    }
  }
  return out;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) { return compose(a, b) - compose(b, a); }

DiffOperator formal_adjoint(const DiffOperator& a) {
  if (a.varset() != VarSet::ConfigSpace) throw DomainError("formal_adjoint: only ConfigSpace operators");
  DiffOperator out(a.dim(), a.varset());
  for (const auto& [alpha, c] : a.terms()) {
    DiffOperator d(a.dim(), a.varset());
    d.add_term(alpha, Polynomial::constant(a.dim(), weight(alpha) % 2 == 0 ? 1 : -1));
    out += compose(d, DiffOperator::multiplication(c.conj(), a.varset()));
  }
  return out;
}

DiffOperator restrict_time(const DiffOperator& a, const Rational& t0) {
  AffineMap map{{Variable::t(), Polynomial::constant(a.dim(), ComplexRational(t0))}};
  DiffOperator out(a.dim(), a.varset());
  for (const auto& [alpha, c] : a.terms()) out.add_term(alpha, substitute_affine(c, map));
  return out;
}

std::string to_string(const DiffOperator& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest order first.
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    const auto& [alpha, c] = *it;
    if (!first) os << " + ";
    first = false;
    std::string deriv;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (!deriv.empty()) deriv += "*";
      deriv += "d_" + var_name(var_at(i, a.dim()));
      if (alpha[i] > 1) deriv += "^" + std::to_string(alpha[i]);
    }
    if (deriv.empty()) {
      os << "(" << to_string(c) << ")";
    } else if (c == Polynomial::constant(a.dim(), 1)) {
      os << deriv;
    } else {
      os << "(" << to_string(c) << ")*" << deriv;
    }
  }
  return os.str();
}

}  // namespace geoquant
