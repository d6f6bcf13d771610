#include "geoquant/quantize.hpp"

#include "geoquant/error.hpp"

namespace geoquant {
namespace {

const ComplexRational kI = ComplexRational::i();
const ComplexRational kMinusI = -ComplexRational::i();
const ComplexRational kMinusHalfI(Rational(0), Rational(-1, 2));

}  // namespace

std::string to_string(QuantizationMap m) {
  switch (m) {
    case QuantizationMap::PrequantT:
      return "PrequantT";
    case QuantizationMap::PrequantV:
      return "PrequantV";
    case QuantizationMap::Schrodinger:
      return "Schrodinger";
  }
  return "?";
}

DiffOperator prequantize_t(const PhaseFunction& f) {
  const Polynomial& a = f.poly();
  const int dim = a.dim();
  const VarSet set = VarSet::PhaseSpaceT;

  // Conjugate pairs (q^l, p_l) with q^0 = t.
  std::vector<std::pair<Variable, Variable>> pairs{{Variable::t(), Variable::p0()}};
  for (int k = 1; k <= dim; ++k) pairs.emplace_back(Variable::q(k), Variable::p(k));

  Polynomial potential = a;
  DiffOperator out(dim, set);
  for (const auto& [q, p] : pairs) {
    const Polynomial da_dp = diff(a, p);
    out += DiffOperator::derivative(q, set, kMinusI * da_dp);
    out += DiffOperator::derivative(p, set, kI * diff(a, q));
    potential -= Polynomial::variable(dim, p) * da_dp;
  }
  return out + DiffOperator::multiplication(potential, set);
}

DiffOperator prequantize_v(const PhaseFunction& f) {
  if (f.space() != Space::OnVQ) throw MismatchError("prequantize_v: expected a function on V*Q");
  const Polynomial& a = f.poly();
  const int dim = a.dim();
  const VarSet set = VarSet::PhaseSpaceV;

  Polynomial potential = a;
  DiffOperator out(dim, set);
  for (int k = 1; k <= dim; ++k) {
    const Polynomial da_dp = diff(a, Variable::p(k));
    out += DiffOperator::derivative(Variable::q(k), set, kMinusI * da_dp);
    out += DiffOperator::derivative(Variable::p(k), set, kI * diff(a, Variable::q(k)));
    potential -= Polynomial::variable(dim, Variable::p(k)) * da_dp;
  }
  return out + DiffOperator::multiplication(potential, set);
}

DiffOperator schrodinger_quantize(const PhaseFunction& f) {
  const Polynomial& a = f.poly();
  if (a.momentum_degree() > 1) {
    throw DomainError("schrodinger_quantize: " + to_string(a) +
                      " is not affine in momenta (use quantize_quadratic)");
  }
  const int dim = a.dim();
  const VarSet set = VarSet::ConfigSpace;

  std::vector<std::pair<Variable, Variable>> pairs;
  if (f.space() == Space::OnTQ) pairs.emplace_back(Variable::t(), Variable::p0());
  for (int k = 1; k <= dim; ++k) pairs.emplace_back(Variable::q(k), Variable::p(k));

  Polynomial b = a;
  DiffOperator out(dim, set);
  for (const auto& [q, p] : pairs) {
    const Polynomial coeff = diff(a, p);  // a^l(t, q)
    if (coeff.is_zero()) continue;
    out += DiffOperator::derivative(q, set, kMinusI * coeff);
    b -= Polynomial::variable(dim, p) * coeff;
    b += kMinusHalfI * diff(coeff, q);  // metaplectic correction
  }
  return out + DiffOperator::multiplication(b, set);
}

DiffOperator quantize_quadratic(const PhaseFunction& h) {
  const Polynomial& a = h.poly();
  if (h.space() != Space::OnVQ || a.depends_on(Variable::p0())) {
    throw DomainError("quantize_quadratic: expected a function on V*Q");
  }
  if (a.momentum_degree() > 2) {
    throw DomainError("quantize_quadratic: momentum degree " + std::to_string(a.momentum_degree()) +
                      " exceeds 2 in " + to_string(a));
  }
  const int dim = a.dim();
  const VarSet set = VarSet::ConfigSpace;

  // Split off the quadratic part; what remains is affine and handled by
  // schrodinger_quantize, whose ordering equals -(i/2)(b d + d o b) + c.
  Polynomial affine = a;
  DiffOperator out(dim, set);
  const ComplexRational half(Rational(1, 2));
  for (int j = 1; j <= dim; ++j) {
    for (int k = j; k <= dim; ++k) {
      Polynomial h_jk = diff(diff(a, Variable::p(j)), Variable::p(k));  // 2 a^{jk} (j != k: 2 a^{jk} too)
      if (h_jk.is_zero()) continue;
      // a^{jj} = h_jj / 2; a^{jk} = a^{kj} = h_jk / 2 for j < k.
      const Polynomial a_jk = half * h_jk;
      const Polynomial pj = Polynomial::variable(dim, Variable::p(j));
      const Polynomial pk = Polynomial::variable(dim, Variable::p(k));
      affine -= (j == k ? a_jk * pj * pk : h_jk * pj * pk);

      auto dj = DiffOperator::derivative(Variable::q(j), set, Polynomial::constant(dim, 1));
      auto dk = DiffOperator::derivative(Variable::q(k), set, Polynomial::constant(dim, 1));
      auto mult = DiffOperator::multiplication(a_jk, set);
      out -= compose(compose(dj, mult), dk);
      if (j != k) out -= compose(compose(dk, mult), dj);
    }
  }
  return out + schrodinger_quantize(PhaseFunction::on_vq(std::move(affine)));
}

DiffOperator quantize_observable(const PhaseFunction& f) {
  if (f.poly().momentum_degree() <= 1) return schrodinger_quantize(f);
  return quantize_quadratic(f);
}

DiffOperator quantize(const PhaseFunction& f, QuantizationMap map) {
  switch (map) {
    case QuantizationMap::PrequantT:
      return prequantize_t(f);
    case QuantizationMap::PrequantV:
      return prequantize_v(f);
    case QuantizationMap::Schrodinger:
      return quantize_observable(f);
  }
  throw DomainError("unknown quantization map");
}

DiffOperator dirac_defect(const PhaseFunction& f, const PhaseFunction& g, QuantizationMap map) {
  if (map == QuantizationMap::PrequantT) {
    const PhaseFunction bracket = bracket_t(f.lift(), g.lift());
    return commutator(prequantize_t(f), prequantize_t(g)) + kI * prequantize_t(bracket);
  }
  if (map == QuantizationMap::PrequantV) {
    return commutator(prequantize_v(f), prequantize_v(g)) + kI * prequantize_v(bracket_v(f, g));
  }
  // Schroedinger: a p0-free function quantizes identically with either tag,
  // so normalize to V*Q where the quadratic ordering is defined.
  auto normalize = [](const PhaseFunction& x) {
    return x.poly().depends_on(Variable::p0()) ? x : PhaseFunction::on_vq(x.poly());
  };
  const PhaseFunction fn = normalize(f);
  const PhaseFunction gn = normalize(g);
  const bool use_t = fn.space() == Space::OnTQ || gn.space() == Space::OnTQ;
  const PhaseFunction bracket = normalize(use_t ? bracket_t(fn.lift(), gn.lift()) : bracket_v(fn, gn));
  return commutator(quantize_observable(fn), quantize_observable(gn)) + kI * quantize_observable(bracket);
}

DiffOperator heisenberg_derivative(const DiffOperator& fhat, const PhaseFunction& h) {
  if (fhat.varset() != VarSet::ConfigSpace) throw MismatchError("heisenberg_derivative: expected a ConfigSpace operator");
  const int dim = fhat.dim();
  DiffOperator h_star = DiffOperator::derivative(Variable::t(), VarSet::ConfigSpace, Polynomial::constant(dim, kMinusI));
  h_star += quantize_quadratic(h);
  return kI * commutator(h_star, fhat);
}

}  // namespace geoquant
