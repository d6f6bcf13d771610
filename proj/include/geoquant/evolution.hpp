#pragma once

#include <map>
#include <memory>
#include <vector>

#include "geoquant/grid.hpp"
#include "geoquant/poisson.hpp"

namespace geoquant {

/// A point (t, q^k, p_k) of V*Q.
struct ClassicalState {
  double t = 0.0;
  std::vector<double> q;
  std::vector<double> p;
};

/// Hamilton's equations q' = dH/dp, p' = -dH/dq, t' = 1 for a compiled H.
class HamiltonFlow {
 public:
  explicit HamiltonFlow(const PhaseFunction& h);

  /// One classical RK4 step.
  ClassicalState step(const ClassicalState& s, double dt) const;

 private:
  std::vector<double> rhs(double t, const std::vector<double>& y) const;

  int dim_;
  std::vector<NumericPolynomial> dh_dp_;
  std::vector<NumericPolynomial> dh_dq_;
};

ClassicalState classical_step_rk4(const PhaseFunction& h, const ClassicalState& s, double dt);

/// Solver residual bound for each Crank-Nicolson step.
inline constexpr double kSolverTolerance = 1e-12;

/// Crank-Nicolson propagator for i d/dt rho = H^ rho with hard walls.
///
/// H^ comes from quantize_quadratic and is discretized with the Dirichlet
/// boundary; its Hermitian part is taken so that each step is exactly a
/// Cayley transform. Coefficients are sampled at t + dt/2. The LU factors
/// are cached per dt while H is time independent.
class CrankNicolson {
 public:
  CrankNicolson(const PhaseFunction& h, GridSpec spec);
  ~CrankNicolson();
  CrankNicolson(CrankNicolson&&) noexcept;
  CrankNicolson& operator=(CrankNicolson&&) noexcept;

  GridState step(const GridState& s, double dt);

  const DiffOperator& hamiltonian() const { return h_hat_; }

 private:
  struct Factorization;
  Factorization& factorization(double t_mid, double dt);

  DiffOperator h_hat_;
  GridSpec spec_;
  bool time_dependent_;
  std::vector<std::size_t> interior_;
  std::unique_ptr<Factorization> cached_;
};

GridState crank_nicolson_step(const PhaseFunction& h, const GridState& s, double dt);

/// Constant-velocity frame q' = q - v t.
struct MovingFrame {
  std::vector<double> velocity;
};

enum class FrameDirection { ToMoving, ToRest };

/// out(q) = in(q + shift) by tensor-product cubic Lagrange interpolation,
/// zero outside the box. NumericError if more than kMaxTailMass of the
/// state's mass would leave the box.
GridState translate_grid(const GridState& s, const std::vector<double>& shift);

/// Multiplies by exp(-/+ i (v.q + |v|^2 t / 2)): the momentum boost of a
/// Galilean frame change (minus sign for ToMoving).
GridState boost_phase(const GridState& s, const MovingFrame& frame, FrameDirection direction);

/// Galilean change of frame on a time slice. ToMoving:
///   rho'(q') = exp(-i v.q' - i |v|^2 t / 2) rho(q' + v t).
/// ToRest is its inverse. The Jacobian of q -> q - v t is 1, so no density
/// factor appears.
GridState frame_transform_grid(const GridState& s, const MovingFrame& frame, FrameDirection direction);

}  // namespace geoquant
