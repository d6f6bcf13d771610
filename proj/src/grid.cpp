#include "geoquant/grid.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "geoquant/error.hpp"

namespace geoquant {
namespace {

using Stencil = std::vector<std::pair<std::size_t, double>>;

// Row i of the 1D derivative matrix of the given order (0, 1 or 2).
Stencil stencil_row(std::size_t order, std::size_t i, std::size_t n, double h) {
  if (order == 0) return {{i, 1.0}};
  if (order == 1) {
    const double s = 1.0 / (2.0 * h);
    if (i == 0) return {{0, -3.0 * s}, {1, 4.0 * s}, {2, -1.0 * s}};
    if (i == n - 1) return {{n - 3, 1.0 * s}, {n - 2, -4.0 * s}, {n - 1, 3.0 * s}};
    return {{i - 1, -s}, {i + 1, s}};
  }
  const double s = 1.0 / (h * h);
  if (i == 0) return {{0, 2.0 * s}, {1, -5.0 * s}, {2, 4.0 * s}, {3, -1.0 * s}};
  if (i == n - 1) return {{n - 4, -1.0 * s}, {n - 3, 4.0 * s}, {n - 2, -5.0 * s}, {n - 1, 2.0 * s}};
  return {{i - 1, s}, {i, -2.0 * s}, {i + 1, s}};
}

void require_same_grid(const GridState& a, const GridState& b) {
  if (!(a.spec == b.spec)) throw MismatchError("grid states live on different grids");
  if (a.t != b.t) throw MismatchError("grid states live at different times");
}

std::vector<double> eval_point(const GridSpec& spec, double t, const std::vector<std::size_t>& idx) {
  std::vector<double> point(num_vars(spec.dim()), 0.0);
  point[0] = t;
  for (int k = 0; k < spec.dim(); ++k) point[static_cast<std::size_t>(k) + 1] = spec.coord(k, idx[k]);
  return point;
}

}  // namespace

GridSpec::GridSpec(std::vector<double> lower, std::vector<double> upper, std::vector<std::size_t> points)
    : lower_(std::move(lower)), upper_(std::move(upper)), points_(std::move(points)) {
  if (points_.empty() || points_.size() > 2) throw DomainError("grid dimension must be 1 or 2");
  if (lower_.size() != points_.size() || upper_.size() != points_.size()) {
    throw MismatchError("grid bounds and point counts have different lengths");
  }
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k])) throw DomainError("grid bounds must be finite");
    if (!(lower_[k] < upper_[k])) throw DomainError("grid lower bound must be below upper bound");
    if (points_[k] < 8) throw DomainError("grid needs at least 8 points per axis");
  }
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (auto p : points_) n *= p;
  return n;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int k = 0; k < dim(); ++k) v *= spacing(k);
  return v;
}

std::vector<std::size_t> GridSpec::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(points_.size());
  for (std::size_t k = points_.size(); k-- > 0;) {
    idx[k] = flat % points_[k];
    flat /= points_[k];
  }
  return idx;
}

GridState::GridState(GridSpec s, double time, std::vector<std::complex<double>> v)
    : spec(std::move(s)), t(time), values(std::move(v)) {
  if (values.size() != spec.size()) throw MismatchError("grid state has wrong number of values");
}

double packet_tail_mass(const GridSpec& spec, const PacketParams& packet) {
  double inside = 1.0;
  for (int k = 0; k < spec.dim(); ++k) {
    // |rho|^2 is normal with standard deviation width / sqrt(2).
    const double w = packet.width[k];
    const double above = 0.5 * std::erfc((spec.upper(k) - packet.center_q[k]) / w);
    const double below = 0.5 * std::erfc((packet.center_q[k] - spec.lower(k)) / w);
    inside *= 1.0 - above - below;
  }
  return 1.0 - inside;
}

GridState gaussian_packet(const GridSpec& spec, const PacketParams& packet, double t) {
  const auto m = static_cast<std::size_t>(spec.dim());
  if (packet.center_q.size() != m || packet.center_p.size() != m || packet.width.size() != m) {
    throw MismatchError("packet parameters do not match grid dimension");
  }
  for (double w : packet.width) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("packet width must be positive");
  }
  const double tail = packet_tail_mass(spec, packet);
  if (tail > kMaxTailMass) {
    throw DomainError("packet outside box: tail mass " + std::to_string(tail) + " exceeds 1e-12");
  }

  std::vector<std::complex<double>> values(spec.size());
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    std::complex<double> v = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double q = spec.coord(static_cast<int>(k), idx[k]);
      const double s = packet.width[k];
      const double d = q - packet.center_q[k];
      v *= std::pow(std::numbers::pi * s * s, -0.25) *
           std::exp(std::complex<double>(-d * d / (2.0 * s * s), packet.center_p[k] * q));
    }
    values[flat] = v;
  }
  GridState state(spec, t, std::move(values));
  const double scale = 1.0 / std::sqrt(norm_squared(state));
  for (auto& v : state.values) v *= scale;
  return state;
}

std::complex<double> inner_product(const GridState& a, const GridState& b) {
  require_same_grid(a, b);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * std::conj(b.values[i]);
  return sum * a.spec.cell_volume() * std::pow(2.0 * std::numbers::pi, -a.spec.dim());
}

double norm_squared(const GridState& s) { return inner_product(s, s).real(); }

SparseMatrix discretize(const DiffOperator& op, const GridSpec& spec, double t, Boundary boundary) {
  if (op.varset() != VarSet::ConfigSpace) throw DomainError("only ConfigSpace operators act on grid states");
  if (op.dim() != spec.dim()) throw MismatchError("operator and grid have different dimensions");
  if (op.differentiates_in(Variable::t())) {
    throw DomainError("operator contains d/dt; only instantwise operators act on a time slice");
  }
  if (op.order() > 2) throw DomainError("derivative order " + std::to_string(op.order()) + " exceeds 2");

  const int m = spec.dim();
  const std::size_t n = spec.size();
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  for (const auto& [alpha, coeff] : op.terms()) {
    const NumericPolynomial c(coeff);
    for (std::size_t row = 0; row < n; ++row) {
      const auto idx = spec.unflatten(row);
      const auto point = eval_point(spec, t, idx);
      const std::complex<double> value = c(point);
      if (value == 0.0) continue;
      Stencil axis0 = stencil_row(alpha[1], idx[0], spec.points(0), spec.spacing(0));
      if (m == 1) {
        for (const auto& [col, w] : axis0) triplets.emplace_back(row, col, value * w);
        continue;
      }
      Stencil axis1 = stencil_row(alpha[2], idx[1], spec.points(1), spec.spacing(1));
      for (const auto& [c0, w0] : axis0) {
        for (const auto& [c1, w1] : axis1) triplets.emplace_back(row, c0 * spec.points(1) + c1, value * w0 * w1);
      }
    }
  }
  SparseMatrix full(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  full.setFromTriplets(triplets.begin(), triplets.end());
  if (boundary == Boundary::OneSided) return full;

  const auto interior = interior_nodes(spec);
  std::vector<Eigen::Index> position(n, -1);
  for (std::size_t i = 0; i < interior.size(); ++i) position[interior[i]] = static_cast<Eigen::Index>(i);
  std::vector<Eigen::Triplet<std::complex<double>>> kept;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    for (SparseMatrix::InnerIterator it(full, static_cast<Eigen::Index>(interior[i])); it; ++it) {
      const Eigen::Index col = position[static_cast<std::size_t>(it.col())];
      if (col >= 0) kept.emplace_back(static_cast<Eigen::Index>(i), col, it.value());
    }
  }
  SparseMatrix restricted(static_cast<Eigen::Index>(interior.size()), static_cast<Eigen::Index>(interior.size()));
  restricted.setFromTriplets(kept.begin(), kept.end());
  return restricted;
}

std::vector<std::size_t> interior_nodes(const GridSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    bool inside = true;
    for (int k = 0; k < spec.dim(); ++k) inside = inside && idx[k] > 0 && idx[k] + 1 < spec.points(k);
    if (inside) out.push_back(flat);
  }
  return out;
}

DiscreteOperator::DiscreteOperator(DiffOperator op, GridSpec spec)
    : op_(std::move(op)), spec_(std::move(spec)), time_dependent_(false) {
  for (const auto& [alpha, c] : op_.terms()) time_dependent_ = time_dependent_ || c.depends_on(Variable::t());
  if (op_.order() == 0) {
    const Polynomial c = op_.multiplier();
    bool fibre_free = true;
    for (int k = 1; k <= c.dim(); ++k) fibre_free = fibre_free && !c.depends_on(Variable::q(k));
    if (fibre_free) time_multiplier_ = c;
  }
  // Validate eagerly so that bad operators fail before any stepping.
  matrix(0.0);
}

const SparseMatrix& DiscreteOperator::matrix(double t) {
  if (!built_at_ || (time_dependent_ && *built_at_ != t)) {
    matrix_ = discretize(op_, spec_, t, Boundary::OneSided);
    built_at_ = t;
  }
  return matrix_;
}

GridState apply_operator(DiscreteOperator& op, const GridState& s) {
  const SparseMatrix& m = op.matrix(s.t);
  if (static_cast<std::size_t>(m.rows()) != s.values.size()) throw MismatchError("operator built for another grid");
  Eigen::Map<const Eigen::VectorXcd> in(s.values.data(), static_cast<Eigen::Index>(s.values.size()));
  Eigen::VectorXcd out = m * in;
  return {s.spec, s.t, std::vector<std::complex<double>>(out.data(), out.data() + out.size())};
}

GridState apply_operator(const DiffOperator& op, const GridState& s) {
  DiscreteOperator d(op, s.spec);
  return apply_operator(d, s);
}

std::complex<double> expectation(DiscreteOperator& op, const GridState& s) {
  const double norm = norm_squared(s);
  if (!(norm > 0.0)) throw NumericError("expectation of a zero-norm state");
  if (const auto& c = op.time_multiplier()) {
    std::vector<double> point(num_vars(c->dim()), 0.0);
    point[0] = s.t;
    return NumericPolynomial(*c)(point);
  }
  return inner_product(apply_operator(op, s), s) / norm;
}

std::complex<double> expectation(const DiffOperator& op, const GridState& s) {
  DiscreteOperator d(op, s.spec);
  return expectation(d, s);
}

}  // namespace geoquant
