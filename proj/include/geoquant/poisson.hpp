#pragma once

// Classical structures on the vertical cotangent bundle V*Q (coordinates
// t, q^k, p_k) and the cotangent bundle T*Q (adds p0 conjugate to t).

#include <optional>
#include <vector>

#include "geoquant/polynomial.hpp"

namespace geoquant {

enum class Space { OnVQ, OnTQ };

/// A classical observable tagged with the phase space it lives on.
/// OnVQ functions never depend on p0.
class PhaseFunction {
 public:
  PhaseFunction(Polynomial poly, Space space);

  static PhaseFunction on_vq(Polynomial poly) { return {std::move(poly), Space::OnVQ}; }
  static PhaseFunction on_tq(Polynomial poly) { return {std::move(poly), Space::OnTQ}; }

  const Polynomial& poly() const { return poly_; }
  Space space() const { return space_; }
  int dim() const { return poly_.dim(); }

  /// Pull-back along T*Q -> V*Q. Same term data, relaxed tag.
  PhaseFunction lift() const { return {poly_, Space::OnTQ}; }

  friend bool operator==(const PhaseFunction&, const PhaseFunction&) = default;

 private:
  Polynomial poly_;
  Space space_;
};

/// Components of a vector field on phase space. `d_p0` is set only for
/// fields on T*Q.
struct VectorFieldCoeffs {
  Polynomial d_t;
  std::vector<Polynomial> d_q;
  std::optional<Polynomial> d_p0;
  std::vector<Polynomial> d_p;

  /// Derivative of `g` along the field.
  Polynomial apply(const Polynomial& g) const;

  friend bool operator==(const VectorFieldCoeffs&, const VectorFieldCoeffs&) = default;
};

/// Coefficients Gamma^k(t, q) of a connection dt + Gamma^k dq_k on Q -> R,
/// i.e. the velocity field of a reference frame.
class FrameConnection {
 public:
  explicit FrameConnection(std::vector<Polynomial> gamma);
  /// Constant-velocity frame.
  static FrameConnection constant(int dim, const std::vector<Rational>& velocity);

  const std::vector<Polynomial>& gamma() const { return gamma_; }
  int dim() const { return static_cast<int>(gamma_.size()); }

 private:
  std::vector<Polynomial> gamma_;
};

/// {f,g}_V = d^k f d_k g - d_k f d^k g, summed over fibre indices.
PhaseFunction bracket_v(const PhaseFunction& f, const PhaseFunction& g);
/// Canonical bracket on T*Q (sum also over the (t, p0) pair). OnVQ inputs are lifted.
PhaseFunction bracket_t(const PhaseFunction& f, const PhaseFunction& g);

VectorFieldCoeffs hamiltonian_vector_field_t(const PhaseFunction& f);

/// H* = p0 + H.
PhaseFunction star_hamiltonian(const PhaseFunction& h);

/// gamma_H = dt + dH/dp_k d_k - dH/dq^k d^k; its integral curves solve Hamilton's equations.
VectorFieldCoeffs hamiltonian_connection(const PhaseFunction& h);

/// L_{gamma_H} f = d_t f + {H, f}_V.
PhaseFunction classical_evolution(const PhaseFunction& f, const PhaseFunction& h);

/// lift(L_{gamma_H} f) - {H*, lift f}_T. Identically zero for all inputs.
PhaseFunction evolution_identity_defect(const PhaseFunction& f, const PhaseFunction& h);

/// Frame energy H - p_k Gamma^k.
PhaseFunction frame_split(const PhaseFunction& h, const FrameConnection& frame);

/// p_k Gamma^k, the Hamiltonian of the frame itself.
PhaseFunction frame_hamiltonian(const FrameConnection& frame);

/// True iff f has no p0 dependence and joint momentum degree <= 1.
bool is_vertical_affine(const PhaseFunction& f);

}  // namespace geoquant
