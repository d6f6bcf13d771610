#include "geoquant/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "geoquant/error.hpp"

namespace geoquant {

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const ComplexRational& c) {
  if (c.is_real()) return to_string(c.re());
  if (sgn(c.re()) == 0) {
    if (c.im() == 1) return "I";
    if (c.im() == -1) return "-I";
    return to_string(c.im()) + "*I";
  }
  std::string out = "(" + to_string(c.re());
  out += sgn(c.im()) < 0 ? " - " : " + ";
  Rational mag = abs(c.im());
  out += mag == 1 ? "I" : to_string(mag) + "*I";
  return out + ")";
}

std::size_t var_index(Variable v, int dim) {
  if ((v.kind == VarKind::Q || v.kind == VarKind::P) && (v.k < 1 || v.k > dim)) {
    throw MismatchError("variable " + var_name(v) + " out of range for dim " + std::to_string(dim));
  }
  switch (v.kind) {
    case VarKind::Time:
      return 0;
    case VarKind::Q:
      return static_cast<std::size_t>(v.k);
    case VarKind::P0:
      return static_cast<std::size_t>(dim) + 1;
    case VarKind::P:
      return static_cast<std::size_t>(dim) + 1 + static_cast<std::size_t>(v.k);
  }
  return 0;
}

Variable var_at(std::size_t index, int dim) {
  const auto m = static_cast<std::size_t>(dim);
  if (index == 0) return Variable::t();
  if (index <= m) return Variable::q(static_cast<int>(index));
  if (index == m + 1) return Variable::p0();
  if (index <= 2 * m + 1) return Variable::p(static_cast<int>(index - m - 1));
  throw MismatchError("variable index " + std::to_string(index) + " out of range");
}

std::string var_name(Variable v) {
  switch (v.kind) {
    case VarKind::Time:
      return "t";
    case VarKind::Q:
      return "q" + std::to_string(v.k);
    case VarKind::P0:
      return "p0";
    case VarKind::P:
      return "p" + std::to_string(v.k);
  }
  return "?";
}

Polynomial::Polynomial(int dim) : dim_(dim) {
  if (dim < 1) throw DomainError("polynomial dimension must be positive");
}

Polynomial Polynomial::constant(int dim, const ComplexRational& c) {
  return monomial(dim, Exponents(geoquant::num_vars(dim), 0), c);
}

Polynomial Polynomial::variable(int dim, Variable v) {
  Exponents e(geoquant::num_vars(dim), 0);
  e[var_index(v, dim)] = 1;
  return monomial(dim, std::move(e), ComplexRational(1));
}

Polynomial Polynomial::monomial(int dim, Exponents exponents, const ComplexRational& c) {
  Polynomial p(dim);
  if (exponents.size() != p.num_vars()) throw MismatchError("exponent vector has wrong length");
  p.add_term(exponents, c);
  return p;
}

ComplexRational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ComplexRational() : it->second;
}

ComplexRational Polynomial::constant_term() const {
  return coefficient(Exponents(num_vars(), 0));
}

unsigned Polynomial::degree_in(Variable v) const {
  const std::size_t idx = var_index(v, dim_);
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0U));
  return d;
}

unsigned Polynomial::momentum_degree() const {
  const auto first = static_cast<std::size_t>(dim_) + 1;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, std::accumulate(e.begin() + static_cast<std::ptrdiff_t>(first), e.end(), 0U));
  }
  return d;
}

bool Polynomial::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

Polynomial Polynomial::conj() const {
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(dim_, 1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

void Polynomial::add_term(const Exponents& e, const ComplexRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same_dim(const Polynomial& o, const char* op) const {
  if (dim_ != o.dim_) {
    throw MismatchError(std::string(op) + ": dimension mismatch (" + std::to_string(dim_) + " vs " +
                        std::to_string(o.dim_) + ")");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same_dim(o, "add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same_dim(o, "sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const ComplexRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_dim(b, "mul");
  Polynomial out(a.dim_);
  Exponents e(a.num_vars());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial operator-(const Polynomial& a) { return a * ComplexRational(-1); }

Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add:
      return a + b;
    case ArithOp::Sub:
      return a - b;
    case ArithOp::Mul:
      return a * b;
  }
  return Polynomial(a.dim());
}

Polynomial diff(const Polynomial& a, Variable v) {
  const std::size_t idx = var_index(v, a.dim());
  Polynomial out(a.dim());
  for (const auto& [e, c] : a.terms()) {
    if (e[idx] == 0) continue;
    Exponents d = e;
    d[idx] -= 1;
    out.add_term(d, c * ComplexRational(static_cast<long>(e[idx])));
  }
  return out;
}

std::complex<double> eval(const Polynomial& a, std::span<const double> point) {
  if (point.size() != a.num_vars()) {
    throw MismatchError("eval: point has " + std::to_string(point.size()) + " entries, expected " +
                        std::to_string(a.num_vars()));
  }
  return NumericPolynomial(a)(point);
}

Polynomial substitute_affine(const Polynomial& a, const AffineMap& map) {
  const int dim = a.dim();
  std::vector<const Polynomial*> image(a.num_vars(), nullptr);
  for (const auto& [v, expr] : map) {
    if (expr.dim() != dim) throw MismatchError("substitute_affine: dimension mismatch");
    if (expr.total_degree() > 1) {
      throw DomainError("substitute_affine: image of " + var_name(v) + " is not affine");
    }
    image[var_index(v, dim)] = &expr;
  }

  // Powers of each substituted image, grown on demand.
  std::vector<std::vector<Polynomial>> powers(a.num_vars());
  auto power_of = [&](std::size_t idx, unsigned n) -> const Polynomial& {
    auto& table = powers[idx];
    if (table.empty()) table.push_back(Polynomial::constant(dim, 1));
    while (table.size() <= n) table.push_back(table.back() * *image[idx]);
    return table[n];
  };

  Polynomial out(dim);
  for (const auto& [e, c] : a.terms()) {
    Exponents kept = e;
    Polynomial term = Polynomial::constant(dim, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (image[i] == nullptr || e[i] == 0) continue;
      kept[i] = 0;
      term = term * power_of(i, e[i]);
    }
    out += term * Polynomial::monomial(dim, kept, 1);
  }
  return out;
}

std::string to_string(const Polynomial& a) {
  if (a.is_zero()) return "0";
  // Highest total degree first; ties in reverse exponent order.
  std::vector<const Polynomial::TermMap::value_type*> order;
  for (const auto& term : a.terms()) order.push_back(&term);
  std::stable_sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    auto dx = std::accumulate(x->first.begin(), x->first.end(), 0U);
    auto dy = std::accumulate(y->first.begin(), y->first.end(), 0U);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });

  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const auto& [e, c] = *term;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(var_at(i, a.dim()));
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    ComplexRational coeff = c;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    if (negative) coeff = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
      os << to_string(coeff);
    } else if (coeff == ComplexRational(1)) {
      os << mono;
    } else {
      os << to_string(coeff) << "*" << mono;
    }
  }
  return os.str();
}

NumericPolynomial::NumericPolynomial(const Polynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    Term term{c.to_complex(), {}};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term.powers.emplace_back(i, e[i]);
    }
    terms_.push_back(std::move(term));
  }
}

std::complex<double> NumericPolynomial::operator()(std::span<const double> point) const {
  std::complex<double> sum = 0.0;
  for (const auto& term : terms_) {
    double mono = 1.0;
    for (const auto& [idx, n] : term.powers) {
      double x = point[idx];
      for (unsigned j = 0; j < n; ++j) mono *= x;
    }
    sum += term.coeff * mono;
  }
  return sum;
}

}  // namespace geoquant
