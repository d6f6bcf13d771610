#include "geoquant/evolution.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#include "geoquant/error.hpp"
#include "geoquant/quantize.hpp"

namespace geoquant {

// ---------------------------------------------------------------- classical

HamiltonFlow::HamiltonFlow(const PhaseFunction& h) : dim_(h.dim()) {
  if (h.space() != Space::OnVQ) throw MismatchError("Hamilton flow needs a Hamiltonian on V*Q");
  for (int k = 1; k <= dim_; ++k) {
    dh_dp_.emplace_back(diff(h.poly(), Variable::p(k)));
    dh_dq_.emplace_back(diff(h.poly(), Variable::q(k)));
  }
}

std::vector<double> HamiltonFlow::rhs(double t, const std::vector<double>& y) const {
  const auto m = static_cast<std::size_t>(dim_);
  std::vector<double> point(num_vars(dim_), 0.0);
  point[0] = t;
  for (std::size_t k = 0; k < m; ++k) {
    point[1 + k] = y[k];
    point[m + 2 + k] = y[m + k];
  }
  std::vector<double> dy(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    dy[k] = dh_dp_[k](point).real();
    dy[m + k] = -dh_dq_[k](point).real();
  }
  return dy;
}

ClassicalState HamiltonFlow::step(const ClassicalState& s, double dt) const {
  const auto m = static_cast<std::size_t>(dim_);
  if (s.q.size() != m || s.p.size() != m) throw MismatchError("classical state has wrong dimension");
  std::vector<double> y(s.q);
  y.insert(y.end(), s.p.begin(), s.p.end());

  auto shifted = [&](const std::vector<double>& k, double h) {
    std::vector<double> out(y);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * k[i];
    return out;
  };
  const auto k1 = rhs(s.t, y);
  const auto k2 = rhs(s.t + 0.5 * dt, shifted(k1, 0.5 * dt));
  const auto k3 = rhs(s.t + 0.5 * dt, shifted(k2, 0.5 * dt));
  const auto k4 = rhs(s.t + dt, shifted(k3, dt));

  ClassicalState out{s.t + dt, std::vector<double>(m), std::vector<double>(m)};
  for (std::size_t i = 0; i < y.size(); ++i) {
    // Weighted slope first so that constant slopes advance by exactly dt * slope.
    const double slope = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    const double next = y[i] + dt * slope;
    (i < m ? out.q[i] : out.p[i - m]) = next;
  }
  return out;
}

ClassicalState classical_step_rk4(const PhaseFunction& h, const ClassicalState& s, double dt) {
  return HamiltonFlow(h).step(s, dt);
}

// ----------------------------------------------------------- Crank-Nicolson

using ColMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::ColMajor>;

struct CrankNicolson::Factorization {
  double dt = 0.0;
  double t_mid = 0.0;
  ColMatrix forward;   // 1 + i dt/2 H
  ColMatrix backward;  // 1 - i dt/2 H
  Eigen::SparseLU<ColMatrix> lu;
};

CrankNicolson::CrankNicolson(const PhaseFunction& h, GridSpec spec)
    : h_hat_(quantize_quadratic(h)), spec_(std::move(spec)), time_dependent_(h.poly().depends_on(Variable::t())) {
  if (!h.poly().is_real()) throw DomainError("Crank-Nicolson needs a real Hamiltonian");
  if (h.dim() != spec_.dim()) throw MismatchError("Hamiltonian and grid have different dimensions");
  interior_ = interior_nodes(spec_);
  // Fail early on operators the grid cannot represent.
  discretize(h_hat_, spec_, 0.0, Boundary::Dirichlet);
}

CrankNicolson::~CrankNicolson() = default;
CrankNicolson::CrankNicolson(CrankNicolson&&) noexcept = default;
CrankNicolson& CrankNicolson::operator=(CrankNicolson&&) noexcept = default;

CrankNicolson::Factorization& CrankNicolson::factorization(double t_mid, double dt) {
  if (cached_ && cached_->dt == dt && (!time_dependent_ || cached_->t_mid == t_mid)) return *cached_;

  auto f = std::make_unique<Factorization>();
  f->dt = dt;
  f->t_mid = t_mid;
  ColMatrix m = discretize(h_hat_, spec_, t_mid, Boundary::Dirichlet);
  ColMatrix hermitian = 0.5 * (m + ColMatrix(m.adjoint()));
  ColMatrix identity(hermitian.rows(), hermitian.cols());
  identity.setIdentity();
  const std::complex<double> half_step(0.0, 0.5 * dt);
  f->forward = identity + half_step * hermitian;
  f->backward = identity - half_step * hermitian;
  f->lu.compute(f->forward);
  if (f->lu.info() != Eigen::Success) throw NumericError("Crank-Nicolson factorization failed");
  cached_ = std::move(f);
  return *cached_;
}

GridState CrankNicolson::step(const GridState& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
  if (!(s.spec == spec_)) throw MismatchError("state lives on a different grid");
  Factorization& f = factorization(s.t + 0.5 * dt, dt);

  Eigen::VectorXcd x(static_cast<Eigen::Index>(interior_.size()));
  for (std::size_t i = 0; i < interior_.size(); ++i) x[static_cast<Eigen::Index>(i)] = s.values[interior_[i]];
  const Eigen::VectorXcd rhs = f.backward * x;
  const Eigen::VectorXcd y = f.lu.solve(rhs);
  const double scale = rhs.norm();
  const double residual = scale > 0.0 ? (f.forward * y - rhs).norm() / scale : 0.0;
  if (!(residual <= kSolverTolerance)) {
    std::ostringstream os;
    os << "Crank-Nicolson solver residual " << residual << " exceeds tolerance at t=" << s.t;
    throw NumericError(os.str());
  }

  std::vector<std::complex<double>> values(s.values.size(), 0.0);
  for (std::size_t i = 0; i < interior_.size(); ++i) values[interior_[i]] = y[static_cast<Eigen::Index>(i)];
  return {s.spec, s.t + dt, std::move(values)};
}

GridState crank_nicolson_step(const PhaseFunction& h, const GridState& s, double dt) {
  return CrankNicolson(h, s.spec).step(s, dt);
}

// ------------------------------------------------------------------- frames

namespace {

// Cubic Lagrange weights for nodes -1, 0, 1, 2 at offset u in [0, 1).
std::array<double, 4> lagrange_weights(double u) {
  return {-u * (u - 1.0) * (u - 2.0) / 6.0, (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
          -(u + 1.0) * u * (u - 2.0) / 2.0, (u + 1.0) * u * (u - 1.0) / 6.0};
}

struct AxisSample {
  std::array<std::ptrdiff_t, 4> node{};
  std::array<double, 4> weight{};
};

AxisSample sample_axis(std::size_t j, double shift_in_cells) {
  const double pos = static_cast<double>(j) + shift_in_cells;
  const double base = std::floor(pos);
  const auto b = static_cast<std::ptrdiff_t>(base);
  AxisSample out;
  out.weight = lagrange_weights(pos - base);
  for (std::ptrdiff_t i = 0; i < 4; ++i) out.node[static_cast<std::size_t>(i)] = b - 1 + i;
  return out;
}

}  // namespace

GridState translate_grid(const GridState& s, const std::vector<double>& shift) {
  const GridSpec& spec = s.spec;
  const int m = spec.dim();
  if (static_cast<int>(shift.size()) != m) throw MismatchError("shift has wrong dimension");
  bool zero = true;
  for (double d : shift) {
    if (!std::isfinite(d)) throw DomainError("shift must be finite");
    zero = zero && d == 0.0;
  }
  if (zero) return s;

  // Mass carried to positions outside the box.
  double total = 0.0;
  double lost = 0.0;
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    const double w = std::norm(s.values[flat]);
    total += w;
    for (int k = 0; k < m; ++k) {
      const double target = spec.coord(k, idx[k]) - shift[k];
      if (target < spec.lower(k) || target > spec.upper(k)) {
        lost += w;
        break;
      }
    }
  }
  if (total > 0.0 && lost / total > kMaxTailMass) {
    std::ostringstream os;
    os << "support overflow: fraction " << lost / total << " of the state leaves the box";
    throw NumericError(os.str());
  }

  std::vector<double> cells(m);
  for (int k = 0; k < m; ++k) cells[k] = shift[k] / spec.spacing(k);
  auto value_at = [&](const std::vector<std::ptrdiff_t>& node) -> std::complex<double> {
    std::size_t flat = 0;
    for (int k = 0; k < m; ++k) {
      if (node[k] < 0 || node[k] >= static_cast<std::ptrdiff_t>(spec.points(k))) return 0.0;
      flat = flat * spec.points(k) + static_cast<std::size_t>(node[k]);
    }
    return s.values[flat];
  };

  std::vector<std::complex<double>> out(spec.size());
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    const AxisSample a0 = sample_axis(idx[0], cells[0]);
    std::complex<double> acc = 0.0;
    if (m == 1) {
      for (std::size_t i = 0; i < 4; ++i) {
        if (a0.weight[i] != 0.0) acc += a0.weight[i] * value_at({a0.node[i]});
      }
    } else {
      const AxisSample a1 = sample_axis(idx[1], cells[1]);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          const double w = a0.weight[i] * a1.weight[j];
          if (w != 0.0) acc += w * value_at({a0.node[i], a1.node[j]});
        }
      }
    }
    out[flat] = acc;
  }
  return {spec, s.t, std::move(out)};
}

GridState boost_phase(const GridState& s, const MovingFrame& frame, FrameDirection direction) {
  const GridSpec& spec = s.spec;
  const int m = spec.dim();
  if (static_cast<int>(frame.velocity.size()) != m) throw MismatchError("frame velocity has wrong dimension");
  double v2 = 0.0;
  for (double v : frame.velocity) v2 += v * v;
  const double sign = direction == FrameDirection::ToMoving ? -1.0 : 1.0;

  GridState out = s;
  for (std::size_t flat = 0; flat < spec.size(); ++flat) {
    const auto idx = spec.unflatten(flat);
    double phase = 0.5 * v2 * s.t;
    for (int k = 0; k < m; ++k) phase += frame.velocity[k] * spec.coord(k, idx[k]);
    if (phase != 0.0) out.values[flat] *= std::polar(1.0, sign * phase);
  }
  return out;
}

GridState frame_transform_grid(const GridState& s, const MovingFrame& frame, FrameDirection direction) {
  std::vector<double> shift(frame.velocity);
  for (double& d : shift) d *= s.t;
  if (direction == FrameDirection::ToMoving) return boost_phase(translate_grid(s, shift), frame, direction);
  for (double& d : shift) d = -d;
  return translate_grid(boost_phase(s, frame, direction), shift);
}

}  // namespace geoquant
