#pragma once

// Quantization maps from classical observables to differential operators
// (hbar = 1): Kostant-Souriau prequantization on T*Q and V*Q, and the
// Schroedinger representation on half-densities over Q.

#include "geoquant/diff_operator.hpp"
#include "geoquant/poisson.hpp"

namespace geoquant {

enum class QuantizationMap { PrequantT, PrequantV, Schrodinger };

std::string to_string(QuantizationMap m);

/// f^ = -i theta_f + (f - p_l d^l f) on sections over T*Q. OnVQ input is lifted.
DiffOperator prequantize_t(const PhaseFunction& f);

/// f^_V = -i(d^k f d_k - d_k f d^k) + (f - p_k d^k f) on sections over V*Q.
DiffOperator prequantize_v(const PhaseFunction& f);

/// Half-density representation of f = a^l(t,q) p_l + b(t,q):
///   f^ = -i a^l d_l - (i/2) d_l(a^l) + b.
/// The sum runs over k for OnVQ input and over (t, k) for OnTQ input.
/// DomainError for joint momentum degree > 1.
DiffOperator schrodinger_quantize(const PhaseFunction& f);

/// H = a^{jk} p_j p_k + b^k p_k + c on V*Q, ordered as
///   -d_j o a^{jk} o d_k - (i/2)(b^k d_k + d_k o b^k) + c.
/// DomainError for momentum degree > 2 or p0 dependence.
DiffOperator quantize_quadratic(const PhaseFunction& h);

/// schrodinger_quantize for affine input, quantize_quadratic for quadratic OnVQ input.
DiffOperator quantize_observable(const PhaseFunction& f);

/// Quantization through `map`: prequantize_t, prequantize_v or quantize_observable.
DiffOperator quantize(const PhaseFunction& f, QuantizationMap map);

/// [f^, g^] + i * ({f, g})^. Zero exactly when the map respects the bracket on (f, g).
/// The bracket is {,}_T for PrequantT and for Schrodinger with an OnTQ operand,
/// {,}_V otherwise.
DiffOperator dirac_defect(const PhaseFunction& f, const PhaseFunction& g, QuantizationMap map);

/// i [H*^, f^] with H*^ = -i d_t + quantize_quadratic(H): the Heisenberg
/// derivative of an instantwise observable.
DiffOperator heisenberg_derivative(const DiffOperator& fhat, const PhaseFunction& h);

}  // namespace geoquant
