#include "geoquant/poisson.hpp"

#include "geoquant/error.hpp"

namespace geoquant {
namespace {

void require_vq(const PhaseFunction& f, const char* op) {
  if (f.space() != Space::OnVQ) throw MismatchError(std::string(op) + ": expected a function on V*Q");
}

void require_same_dim(const PhaseFunction& f, const PhaseFunction& g, const char* op) {
  if (f.dim() != g.dim()) throw MismatchError(std::string(op) + ": dimension mismatch");
}

}  // namespace

PhaseFunction::PhaseFunction(Polynomial poly, Space space) : poly_(std::move(poly)), space_(space) {
  if (space_ == Space::OnVQ && poly_.depends_on(Variable::p0())) {
    throw DomainError("a function on V*Q cannot depend on p0");
  }
}

Polynomial VectorFieldCoeffs::apply(const Polynomial& g) const {
  const int dim = g.dim();
  if (static_cast<int>(d_q.size()) != dim || static_cast<int>(d_p.size()) != dim) {
    throw MismatchError("vector field dimension mismatch");
  }
  Polynomial out = d_t * diff(g, Variable::t());
  for (int k = 1; k <= dim; ++k) {
    out += d_q[k - 1] * diff(g, Variable::q(k));
    out += d_p[k - 1] * diff(g, Variable::p(k));
  }
  if (d_p0) out += *d_p0 * diff(g, Variable::p0());
  return out;
}

FrameConnection::FrameConnection(std::vector<Polynomial> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw DomainError("frame connection needs at least one component");
  const int dim = static_cast<int>(gamma_.size());
  for (const auto& g : gamma_) {
    if (g.dim() != dim) throw MismatchError("frame connection component has wrong dimension");
    if (g.momentum_degree() > 0) throw DomainError("frame connection components must not depend on momenta");
  }
}

FrameConnection FrameConnection::constant(int dim, const std::vector<Rational>& velocity) {
  if (static_cast<int>(velocity.size()) != dim) throw MismatchError("velocity has wrong length");
  std::vector<Polynomial> gamma;
  for (const auto& v : velocity) gamma.push_back(Polynomial::constant(dim, ComplexRational(v)));
  return FrameConnection(std::move(gamma));
}

PhaseFunction bracket_v(const PhaseFunction& f, const PhaseFunction& g) {
  require_vq(f, "bracket_v");
  require_vq(g, "bracket_v");
  require_same_dim(f, g, "bracket_v");
  const Polynomial& a = f.poly();
  const Polynomial& b = g.poly();
  Polynomial out(a.dim());
  for (int k = 1; k <= a.dim(); ++k) {
    out += diff(a, Variable::p(k)) * diff(b, Variable::q(k));
    out -= diff(a, Variable::q(k)) * diff(b, Variable::p(k));
  }
  return PhaseFunction::on_vq(std::move(out));
}

PhaseFunction bracket_t(const PhaseFunction& f, const PhaseFunction& g) {
  require_same_dim(f, g, "bracket_t");
  const Polynomial& a = f.poly();
  const Polynomial& b = g.poly();
  Polynomial out = diff(a, Variable::p0()) * diff(b, Variable::t()) - diff(a, Variable::t()) * diff(b, Variable::p0());
  for (int k = 1; k <= a.dim(); ++k) {
    out += diff(a, Variable::p(k)) * diff(b, Variable::q(k));
    out -= diff(a, Variable::q(k)) * diff(b, Variable::p(k));
  }
  return PhaseFunction::on_tq(std::move(out));
}

VectorFieldCoeffs hamiltonian_vector_field_t(const PhaseFunction& f) {
  const Polynomial& a = f.poly();
  VectorFieldCoeffs v{diff(a, Variable::p0()), {}, -diff(a, Variable::t()), {}};
  for (int k = 1; k <= a.dim(); ++k) {
    v.d_q.push_back(diff(a, Variable::p(k)));
    v.d_p.push_back(-diff(a, Variable::q(k)));
  }
  return v;
}

PhaseFunction star_hamiltonian(const PhaseFunction& h) {
  require_vq(h, "star_hamiltonian");
  return PhaseFunction::on_tq(Polynomial::variable(h.dim(), Variable::p0()) + h.poly());
}

VectorFieldCoeffs hamiltonian_connection(const PhaseFunction& h) {
  require_vq(h, "hamiltonian_connection");
  const Polynomial& a = h.poly();
  VectorFieldCoeffs v{Polynomial::constant(a.dim(), 1), {}, std::nullopt, {}};
  for (int k = 1; k <= a.dim(); ++k) {
    v.d_q.push_back(diff(a, Variable::p(k)));
    v.d_p.push_back(-diff(a, Variable::q(k)));
  }
  return v;
}

PhaseFunction classical_evolution(const PhaseFunction& f, const PhaseFunction& h) {
  require_vq(f, "classical_evolution");
  require_vq(h, "classical_evolution");
  return PhaseFunction::on_vq(diff(f.poly(), Variable::t()) + bracket_v(h, f).poly());
}

PhaseFunction evolution_identity_defect(const PhaseFunction& f, const PhaseFunction& h) {
  // Left side through the connection, right side through the T*Q bracket.
  const Polynomial lhs = hamiltonian_connection(h).apply(f.poly());
  const Polynomial rhs = bracket_t(star_hamiltonian(h), f.lift()).poly();
  return PhaseFunction::on_tq(lhs - rhs);
}

PhaseFunction frame_hamiltonian(const FrameConnection& frame) {
  Polynomial out(frame.dim());
  for (int k = 1; k <= frame.dim(); ++k) {
    out += Polynomial::variable(frame.dim(), Variable::p(k)) * frame.gamma()[k - 1];
  }
  return PhaseFunction::on_vq(std::move(out));
}

PhaseFunction frame_split(const PhaseFunction& h, const FrameConnection& frame) {
  require_vq(h, "frame_split");
  if (h.dim() != frame.dim()) throw MismatchError("frame_split: dimension mismatch");
  return PhaseFunction::on_vq(h.poly() - frame_hamiltonian(frame).poly());
}

bool is_vertical_affine(const PhaseFunction& f) {
  return !f.poly().depends_on(Variable::p0()) && f.poly().momentum_degree() <= 1;
}

}  // namespace geoquant
