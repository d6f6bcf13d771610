#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "geoquant/error.hpp"
#include "geoquant/evolution.hpp"
#include "geoquant/quantize.hpp"
#include "support.hpp"

using namespace geoquant;
using testing::V;

namespace {

GridSpec line(double lo, double hi, std::size_t n) { return GridSpec({lo}, {hi}, {n}); }
PacketParams packet(double q0, double p0, double width) { return {{q0}, {p0}, {width}}; }

double expect(const std::string& f, const GridState& s) {
  return expectation(quantize_observable(V(f)), s).real();
}

double max_diff(const GridState& a, const GridState& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

}  // namespace

TEST_CASE("RK4 classical steps") {
  const ClassicalState start{0.0, {1.0}, {0.0}};
  const HamiltonFlow osc(V("0.5*(p1^2 + q1^2)"));
  const int steps = 6284;
  const double dt = 2.0 * std::numbers::pi / steps;
  ClassicalState s = start;
  for (int i = 0; i < steps; ++i) s = osc.step(s, dt);
  CHECK(std::abs(s.q[0] - 1.0) <= 1e-8);
  CHECK(std::abs(s.p[0]) <= 1e-8);
  CHECK(s.t == doctest::Approx(2.0 * std::numbers::pi));

  const ClassicalState drift = classical_step_rk4(V("p1"), {0.0, {0.3}, {0.7}}, 0.1);
  CHECK(drift.q[0] == 0.3 + 0.1);
  CHECK(drift.p[0] == 0.7);

  const ClassicalState still = classical_step_rk4(V("0"), {1.0, {0.3}, {0.7}}, 0.1);
  CHECK(still.q[0] == 0.3);
  CHECK(still.p[0] == 0.7);
  CHECK(still.t == 1.1);

  // Time-dependent force p' = t: p(t) = t^2 / 2 exactly for RK4.
  ClassicalState forced{0.0, {0.0}, {0.0}};
  for (int i = 0; i < 10; ++i) forced = classical_step_rk4(V("-t*q1"), forced, 0.1);
  CHECK(forced.p[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(osc.step({0.0, {1.0, 2.0}, {0.0}}, 0.1), MismatchError);
}

TEST_CASE("Crank-Nicolson basics") {
  const auto spec = line(-12, 12, 1024);
  const GridState s = gaussian_packet(spec, packet(1.0, 0.0, 0.7), 0.0);
  const GridState frozen = crank_nicolson_step(V("0"), s, 0.01);
  double moved = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) moved = std::max(moved, std::abs(frozen.values[i] - s.values[i]));
  CHECK(moved <= 1e-15);
  CHECK(frozen.t == 0.01);

  CrankNicolson cn(V("0.5*(p1^2 + q1^2)"), spec);
  GridState x = s;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double before = norm_squared(x);
    x = cn.step(x, 1e-3);
    worst = std::max(worst, std::abs(norm_squared(x) - before));
  }
  CHECK(worst < 1e-10);

  CHECK_THROWS_AS(cn.step(s, 0.0), DomainError);
  CHECK_THROWS_AS(cn.step(gaussian_packet(line(-12, 12, 512), packet(0, 0, 1), 0.0), 1e-3), MismatchError);
  CHECK_THROWS_AS(CrankNicolson(V("p1^3"), spec), DomainError);
  CHECK_THROWS_AS(CrankNicolson(V("q1^2", 2), spec), MismatchError);
}

TEST_CASE("Crank-Nicolson local error is third order in dt") {
  // Reference: exact propagation exp(-i H dt) of the same Dirichlet matrix.
  const auto spec = line(-10, 10, 256);
  const PhaseFunction h = V("0.5*p1^2");
  const auto m = discretize(quantize_quadratic(h), spec, 0.0, Boundary::Dirichlet);
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (dense + dense.adjoint()));
  const GridState s = gaussian_packet(spec, packet(0.0, 2.0, 1.0), 0.0);
  const auto interior = interior_nodes(spec);
  Eigen::VectorXcd x(static_cast<Eigen::Index>(interior.size()));
  for (std::size_t i = 0; i < interior.size(); ++i) x[static_cast<Eigen::Index>(i)] = s.values[interior[i]];

  double errors[2];
  int idx = 0;
  for (double dt : {0.02, 0.01}) {
    const Eigen::VectorXcd phases = (eig.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0, -dt))
                                        .array()
                                        .exp()
                                        .matrix();
    const Eigen::VectorXcd exact = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint() * x;
    const GridState step = crank_nicolson_step(h, s, dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < interior.size(); ++i) {
      worst = std::max(worst, std::abs(step.values[interior[i]] - exact[static_cast<Eigen::Index>(i)]));
    }
    errors[idx++] = worst;
  }
  MESSAGE("one-step errors " << errors[0] << " " << errors[1]);
  CHECK(errors[0] / errors[1] == doctest::Approx(8.0).epsilon(0.1));
}

TEST_CASE("time-dependent Hamiltonian uses the midpoint") {
  // H = t * q: the exact state picks up the phase exp(-i q t^2 / 2) and CN
  // with midpoint sampling reproduces <p> = -t^2/2 up to the stencil error.
  const auto spec = line(-10, 10, 2048);
  GridState s = gaussian_packet(spec, packet(0.0, 0.0, 1.0), 0.0);
  CrankNicolson cn(V("t*q1"), spec);
  for (int i = 0; i < 100; ++i) s = cn.step(s, 0.01);
  CHECK(expect("p1", s) == doctest::Approx(-0.5).epsilon(1e-4));
}

TEST_CASE("frame transforms") {
  const auto spec = line(-8, 8, 32768);
  GridState s = gaussian_packet(spec, packet(0.0, 0.0, 1.0), 0.0);
  s.t = 0.5;
  const MovingFrame rest{{0.0}};
  const GridState same = frame_transform_grid(s, rest, FrameDirection::ToMoving);
  CHECK(same.values == s.values);

  const MovingFrame frame{{1.0}};
  const GridState moved = frame_transform_grid(s, frame, FrameDirection::ToMoving);
  CHECK(std::abs(expect("q1", moved) - (expect("q1", s) - 0.5)) <= 1e-6);
  CHECK(std::abs(expect("p1", moved) - (expect("p1", s) - 1.0)) <= 1e-6);

  const GridState back = frame_transform_grid(moved, frame, FrameDirection::ToRest);
  CHECK(max_diff(back, s) < 1e-9);

  // Grid-aligned shifts are exact index moves.
  const auto coarse = line(-8, 8, 161);
  GridState c = gaussian_packet(coarse, packet(0.0, 0.0, 1.0), 0.0);
  const GridState shifted = translate_grid(c, {coarse.spacing(0) * 3});
  for (std::size_t i = 0; i + 3 < coarse.size(); ++i) CHECK(std::abs(shifted.values[i] - c.values[i + 3]) < 1e-12);

  GridState late = s;
  late.t = 6.0;
  CHECK_THROWS_AS(frame_transform_grid(late, frame, FrameDirection::ToMoving), NumericError);
  CHECK_THROWS_AS(frame_transform_grid(s, MovingFrame{{1.0, 1.0}}, FrameDirection::ToMoving), MismatchError);
}
