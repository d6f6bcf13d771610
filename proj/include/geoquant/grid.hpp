#pragma once

// Half-densities sampled on uniform box grids over the fibre Q_t and the
// finite-difference realization of Schroedinger operators acting on them.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "geoquant/diff_operator.hpp"

namespace geoquant {

/// Uniform grid with `points[k]` nodes on [lower[k], upper[k]] (endpoints included).
class GridSpec {
 public:
  GridSpec(std::vector<double> lower, std::vector<double> upper, std::vector<std::size_t> points);

  int dim() const { return static_cast<int>(points_.size()); }
  double lower(int axis) const { return lower_[axis]; }
  double upper(int axis) const { return upper_[axis]; }
  std::size_t points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return (upper_[axis] - lower_[axis]) / static_cast<double>(points_[axis] - 1); }
  double coord(int axis, std::size_t i) const { return lower_[axis] + static_cast<double>(i) * spacing(axis); }
  /// Total number of nodes.
  std::size_t size() const;
  /// Product of spacings.
  double cell_volume() const;
  /// Per-axis node indices of a flat (row-major, axis 0 slowest) index.
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::size_t> points_;
};

/// Complex half-density on Q_t sampled at the nodes of `spec`.
struct GridState {
  GridSpec spec;
  double t = 0.0;
  std::vector<std::complex<double>> values;

  GridState(GridSpec s, double time, std::vector<std::complex<double>> v);
};

struct PacketParams {
  std::vector<double> center_q;
  std::vector<double> center_p;
  std::vector<double> width;
};

/// Probability mass of the continuum packet |rho|^2 lying outside the box.
double packet_tail_mass(const GridSpec& spec, const PacketParams& packet);

/// Largest tail mass accepted by gaussian_packet.
inline constexpr double kMaxTailMass = 1e-12;

/// prod_k (pi s_k^2)^(-1/4) exp(-(q-q0)^2/(2 s_k^2) + i p0 q), rescaled so that
/// inner_product(rho, rho) == 1. DomainError for bad widths or excessive tail mass.
GridState gaussian_packet(const GridSpec& spec, const PacketParams& packet, double t);

/// <a|b> = (1/2pi)^m sum a conj(b) dV: linear in the first slot, conjugate-linear in the second.
std::complex<double> inner_product(const GridState& a, const GridState& b);
double norm_squared(const GridState& s);

/// How boundary nodes are treated by `discretize`.
///  OneSided  - every node gets a row; boundary rows use one-sided second-order stencils.
///  Dirichlet - interior nodes only; boundary values are pinned to zero.
enum class Boundary { OneSided, Dirichlet };

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

/// Finite-difference matrix of a ConfigSpace operator with coefficients
/// evaluated at time `t`. Centered second-order stencils in the interior.
/// DomainError for d/dt terms or derivative order > 2.
SparseMatrix discretize(const DiffOperator& op, const GridSpec& spec, double t, Boundary boundary);

/// Flat indices of interior nodes, in increasing order.
std::vector<std::size_t> interior_nodes(const GridSpec& spec);

/// Discretization of one operator, rebuilt only when coefficients depend on t.
class DiscreteOperator {
 public:
  DiscreteOperator(DiffOperator op, GridSpec spec);

  const DiffOperator& op() const { return op_; }
  const SparseMatrix& matrix(double t);
  /// Set when the operator is multiplication by a function of t alone.
  const std::optional<Polynomial>& time_multiplier() const { return time_multiplier_; }

 private:
  DiffOperator op_;
  GridSpec spec_;
  bool time_dependent_;
  std::optional<Polynomial> time_multiplier_;
  std::optional<double> built_at_;
  SparseMatrix matrix_;
};

GridState apply_operator(const DiffOperator& op, const GridState& s);
GridState apply_operator(DiscreteOperator& op, const GridState& s);

/// <D s | s> / <s|s> = integral(conj(s) D s) / integral(|s|^2).
/// Multiplication by a function of t alone is returned exactly.
std::complex<double> expectation(const DiffOperator& op, const GridState& s);
std::complex<double> expectation(DiscreteOperator& op, const GridState& s);

}  // namespace geoquant
