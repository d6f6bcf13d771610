// Acceptance suite: one PASS/FAIL line per criterion, tolerances as pinned
// below. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "geoquant/config.hpp"
#include "geoquant/evolution.hpp"
#include "geoquant/quantize.hpp"
#include "geoquant/random_poly.hpp"
#include "geoquant/runs.hpp"

using namespace geoquant;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  char head[160];
  std::snprintf(head, sizeof head, "criterion %2d: %s  %-34s (%.2f s)", id, o.pass ? "PASS" : "FAIL", title.c_str(),
                secs);
  std::cout << head << "  " << o.detail << std::endl;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

const std::uint64_t kSeed = 20240601;

Polynomial random_poly(int dim, std::mt19937_64& rng, unsigned degree, unsigned momentum_degree) {
  RandomPolyOptions o;
  o.max_degree = degree;
  o.max_momentum_degree = momentum_degree;
  return random_polynomial(dim, o, rng);
}

// ---------------------------------------------------------------- 1 - 3

Outcome dirac_suites(const std::vector<DiracSuite>& suites, unsigned degree, double budget) {
  const auto start = Clock::now();
  unsigned nonzero = 0;
  std::string first;
  for (int dim : {1, 2}) {
    for (DiracSuite s : suites) {
      const CheckResult r = run_dirac_suite(s, dim, 200, degree, kSeed);
      nonzero += static_cast<unsigned>(r.metric);
      if (r.status != CheckStatus::Pass && first.empty()) first = r.name + ": " + r.detail;
    }
  }
  const double secs = seconds_since(start);
  const bool pass = nonzero == 0 && secs < budget;
  std::string detail = "200 pairs per suite and dim, nonzero defects=" + std::to_string(nonzero) +
                       ", runtime " + sci(secs) + " s < " + sci(budget) + " s";
  if (!first.empty()) detail += "; " + first;
  return {pass, detail};
}

// ---------------------------------------------------------------- 4

Outcome self_adjointness() {
  std::mt19937_64 rng(kSeed + 4);
  int bad_affine = 0, bad_quadratic = 0, bad_compat = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + trial % 2;
    const auto f = PhaseFunction::on_vq(random_poly(dim, rng, 3, 1));
    const DiffOperator fhat = schrodinger_quantize(f);
    if (!(formal_adjoint(fhat) == fhat)) ++bad_affine;
    const auto h = PhaseFunction::on_vq(random_poly(dim, rng, 4, 2));
    const DiffOperator hhat = quantize_quadratic(h);
    if (!(formal_adjoint(hhat) == hhat)) ++bad_quadratic;

    const auto g = PhaseFunction::on_vq(random_poly(dim, rng, 3, 99));
    auto lifted = prequantize_t(g.lift()).terms();
    DiffOperator::Index dp0(num_vars(dim), 0);
    dp0[var_index(Variable::p0(), dim)] = 1;
    lifted.erase(dp0);
    if (!(lifted == prequantize_v(g).terms())) ++bad_compat;
  }
  return {bad_affine + bad_quadratic + bad_compat == 0,
          "non-self-adjoint affine=" + std::to_string(bad_affine) + "/100 quadratic=" +
              std::to_string(bad_quadratic) + "/100, prequant V/T mismatches=" + std::to_string(bad_compat) + "/100"};
}

// ---------------------------------------------------------------- 5

Outcome instantwise() {
  std::mt19937_64 rng(kSeed + 5);
  int bad_restrict = 0, bad_ring = 0, has_dt = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + trial % 2;
    const auto f = PhaseFunction::on_vq(random_poly(dim, rng, 3, 1 + static_cast<unsigned>(trial % 2)));
    const DiffOperator fhat = quantize_observable(f);
    if (fhat.differentiates_in(Variable::t())) ++has_dt;

    const Rational t0(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    AffineMap at{{Variable::t(), Polynomial::constant(dim, t0)}};
    if (!(restrict_time(fhat, t0) == quantize_observable(PhaseFunction::on_vq(substitute_affine(f.poly(), at))))) {
      ++bad_restrict;
    }
    Polynomial r(dim);
    for (unsigned e = 0; e < 3; ++e) {
      const Rational c(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
      r += ComplexRational(c) * Polynomial::variable(dim, Variable::t()).pow(e);
    }
    const DiffOperator lhs = quantize_observable(PhaseFunction::on_vq(r * f.poly()));
    if (!(lhs == compose(DiffOperator::multiplication(r, VarSet::ConfigSpace), fhat))) ++bad_ring;
  }
  return {bad_restrict + bad_ring + has_dt == 0,
          "t-evaluation mismatches=" + std::to_string(bad_restrict) + "/100, r(t) mismatches=" +
              std::to_string(bad_ring) + "/100, d/dt terms=" + std::to_string(has_dt)};
}

// ---------------------------------------------------------------- 6 - 7

struct OscillatorErrors {
  double q = 0.0, p = 0.0, norm_drift = 0.0, energy_drift = 0.0, seconds = 0.0;
};

// Ehrenfest errors against the closed form q = q0 cos t + p0 sin t.
OscillatorErrors oscillator_run(HamiltonianSpec spec) {
  const auto start = Clock::now();
  const EvolveSeries s = simulate_evolution(spec);
  OscillatorErrors e;
  e.seconds = seconds_since(start);
  const double q0 = spec.initial.center_q[0], p0 = spec.initial.center_p[0];
  const double e0 = s.expectations[0][2].real();
  for (std::size_t n = 0; n < s.quantum_t.size(); ++n) {
    const double t = s.quantum_t[n];
    e.q = std::max(e.q, std::abs(s.expectations[n][0].real() - (q0 * std::cos(t) + p0 * std::sin(t))));
    e.p = std::max(e.p, std::abs(s.expectations[n][1].real() - (p0 * std::cos(t) - q0 * std::sin(t))));
    e.norm_drift = std::max(e.norm_drift, std::abs(s.norm[n] - s.norm[0]));
    e.energy_drift = std::max(e.energy_drift, std::abs(s.expectations[n][2].real() - e0));
  }
  return e;
}

HamiltonianSpec oscillator_spec() {
  HamiltonianSpec spec = load_config(GEOQUANT_CONFIG_DIR "/oscillator.cfg");
  if (spec.evolve.observable_text.size() < 3 || spec.evolve.observable_text[0] != "q1" ||
      spec.evolve.observable_text[1] != "p1") {
    throw Error("oscillator.cfg must list q1, p1 and the energy as its first observables");
  }
  return spec;
}

HamiltonianSpec with_points(HamiltonianSpec spec, std::size_t n) {
  spec.grid = GridSpec({spec.grid.lower(0)}, {spec.grid.upper(0)}, {n});
  return spec;
}

Outcome ehrenfest() {
  const HamiltonianSpec spec = oscillator_spec();
  const OscillatorErrors e = oscillator_run(spec);
  const bool pass = e.q <= 1e-4 && e.p <= 1e-4 && e.norm_drift <= 1e-8 && e.energy_drift <= 1e-6 && e.seconds < 60.0;
  return {pass, "n=" + std::to_string(spec.grid.points(0)) + " dt=" + sci(spec.evolve.dt) +
                    " T=" + sci(spec.evolve.dt * static_cast<double>(spec.evolve.steps)) + ": max|<q>-q_cl|=" +
                    sci(e.q) + " max|<p>-p_cl|=" + sci(e.p) + " (tol 1e-4), norm drift=" + sci(e.norm_drift) +
                    " (tol 1e-8), energy drift=" + sci(e.energy_drift) + " (tol 1e-6), runtime " + sci(e.seconds) +
                    " s (< 60 s)"};
}

// Max state error of Crank-Nicolson against exact propagation of the same
// Dirichlet matrix, sampled every 0.5 time units.
double temporal_error(const HamiltonianSpec& spec, double dt) {
  const auto m = discretize(quantize_quadratic(spec.hamiltonian), spec.grid, 0.0, Boundary::Dirichlet);
  const Eigen::MatrixXcd dense(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (dense + dense.adjoint()));
  const auto interior = interior_nodes(spec.grid);
  GridState s = gaussian_packet(spec.grid, spec.initial, 0.0);
  Eigen::VectorXcd x0(static_cast<Eigen::Index>(interior.size()));
  for (std::size_t i = 0; i < interior.size(); ++i) x0[static_cast<Eigen::Index>(i)] = s.values[interior[i]];
  const Eigen::VectorXcd modes0 = eig.eigenvectors().adjoint() * x0;

  CrankNicolson cn(spec.hamiltonian, spec.grid);
  const auto per_checkpoint = static_cast<std::size_t>(std::llround(0.5 / dt));
  const std::size_t total = static_cast<std::size_t>(std::llround(spec.evolve.dt * spec.evolve.steps / dt));
  const double scale = spec.grid.cell_volume() / (2.0 * M_PI);
  double worst = 0.0;
  for (std::size_t n = 1; n <= total; ++n) {
    s = cn.step(s, dt);
    if (n % per_checkpoint != 0 && n != total) continue;
    const Eigen::VectorXcd phases =
        (eig.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0.0, -s.t)).array().exp().matrix();
    const Eigen::VectorXcd exact = eig.eigenvectors() * phases.cwiseProduct(modes0);
    double err2 = 0.0;
    for (std::size_t i = 0; i < interior.size(); ++i) {
      err2 += std::norm(s.values[interior[i]] - exact[static_cast<Eigen::Index>(i)]);
    }
    worst = std::max(worst, std::sqrt(err2 * scale));
  }
  return worst;
}

Outcome convergence() {
  const HamiltonianSpec spec = oscillator_spec();
  const std::size_t n = spec.grid.points(0);
  const OscillatorErrors coarse = oscillator_run(spec);
  const OscillatorErrors fine = oscillator_run(with_points(spec, 2 * n));
  const double space_ratio = std::max(coarse.q, coarse.p) / std::max(fine.q, fine.p);

  const double dt = spec.evolve.dt;
  const double e_dt = temporal_error(spec, dt);
  const double e_half = temporal_error(spec, dt / 2);
  const double time_ratio = e_dt / e_half;

  const bool pass = space_ratio >= 3.5 && space_ratio <= 4.5 && time_ratio >= 3.5 && time_ratio <= 4.5;
  return {pass, "Ehrenfest error n=" + std::to_string(n) + ": " + sci(std::max(coarse.q, coarse.p)) + ", n=" +
                    std::to_string(2 * n) + ": " + sci(std::max(fine.q, fine.p)) + ", ratio " + sci(space_ratio) +
                    "; CN error vs exact propagator dt=" + sci(dt) + ": " + sci(e_dt) + ", dt/2: " + sci(e_half) +
                    ", ratio " + sci(time_ratio) + " (band 3.5-4.5)"};
}

// ---------------------------------------------------------------- 8

Outcome frame_covariance() {
  const HamiltonianSpec spec = load_config(GEOQUANT_CONFIG_DIR "/free.cfg");
  const auto gamma = FrameConnection::constant(spec.dim, spec.velocity);
  const bool exact =
      frame_hamiltonian(gamma).poly() + frame_split(spec.hamiltonian, gamma).poly() == spec.hamiltonian.poly();
  const FrameCompareSeries s = simulate_frame_compare(spec, spec.velocity);
  const bool pass = exact && s.max_q_deviation <= 1e-4 && s.max_p_deviation <= 1e-4;
  return {pass, "H=" + spec.hamiltonian_text + " v=" + to_string(spec.velocity[0]) +
                    " T=" + sci(spec.evolve.dt * static_cast<double>(spec.evolve.steps)) +
                    ": max dev <q>=" + sci(s.max_q_deviation) + " <p>=" + sci(s.max_p_deviation) +
                    " (tol 1e-4), symbolic reassembly " + (exact ? "exact" : "FAILED")};
}

// ---------------------------------------------------------------- 9

Outcome heisenberg() {
  std::mt19937_64 rng(kSeed + 9);
  std::vector<Polynomial> potentials{Polynomial(1), Polynomial::variable(1, Variable::q(1)).pow(2) * Rational(1, 2),
                                     Polynomial::variable(1, Variable::q(1)).pow(4) -
                                         Polynomial::variable(1, Variable::q(1)) *
                                             Polynomial::variable(1, Variable::t())};
  for (int i = 0; i < 40; ++i) potentials.push_back(random_poly(1 + i % 2, rng, 4, 0));
  int bad = 0;
  for (const Polynomial& v : potentials) {
    const int dim = v.dim();
    Polynomial h = v;
    for (int k = 1; k <= dim; ++k) h += Rational(1, 2) * Polynomial::variable(dim, Variable::p(k)).pow(2);
    const auto hf = PhaseFunction::on_vq(h);
    for (int k = 1; k <= dim; ++k) {
      const auto q_hat = schrodinger_quantize(PhaseFunction::on_vq(Polynomial::variable(dim, Variable::q(k))));
      const auto p_hat = schrodinger_quantize(PhaseFunction::on_vq(Polynomial::variable(dim, Variable::p(k))));
      const auto force = schrodinger_quantize(PhaseFunction::on_vq(-diff(v, Variable::q(k))));
      if (!(heisenberg_derivative(q_hat, hf) == p_hat)) ++bad;
      if (!(heisenberg_derivative(p_hat, hf) == force)) ++bad;
    }
  }
  return {bad == 0, std::to_string(potentials.size()) + " potentials V(t,q), mismatches=" + std::to_string(bad)};
}

// ---------------------------------------------------------------- 10

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the CLI with `args` writing into `dir`; returns stdout bytes plus every file.
std::string cli_outputs(const std::string& args, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path stdout_file = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + GEOQUANT_CLI_PATH + "\" " + args + " --out \"" + dir.string() +
                          "\" > \"" + stdout_file.string() + "\" 2> /dev/null";
  const int status = std::system(cmd.c_str());
  std::string all = "status=" + std::to_string(status) + "\n";
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) all += "== " + f.filename().string() + "\n" + slurp(f);
  return all;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "geoquant_acceptance";
  const std::string cfg = GEOQUANT_CONFIG_DIR;
  const std::vector<std::pair<std::string, std::string>> runs{
      {"check-dirac", "check-dirac --seed 11 --trials 200 --degree 3"},
      {"check-dirac-config", "check-dirac --config \"" + cfg + "/oscillator.cfg\" --seed 5 --trials 50"},
      {"evolve", "evolve --config \"" + cfg + "/oscillator.cfg\""},
      {"frame-compare", "frame-compare --config \"" + cfg + "/free.cfg\""},
  };
  std::string detail;
  bool pass = true;
  for (const auto& [name, args] : runs) {
    const std::string a = cli_outputs(args, root / (name + "_a"));
    const std::string b = cli_outputs(args, root / (name + "_b"));
    const bool same = a == b && a.size() > 64;
    pass = pass && same;
    detail += name + (same ? " identical" : " DIFFERENT") + " (" + std::to_string(a.size()) + " bytes); ";
  }
  fs::remove_all(root);
  return {pass, detail};
}

}  // namespace

int main() {
  std::cout << "acceptance suite (seed " << kSeed << ")" << std::endl;
  report(1, "Dirac condition, prequantum", [] {
    return dirac_suites({DiracSuite::PrequantT, DiracSuite::PrequantV}, 3, 10.0);
  });
  report(2, "Dirac condition, Schroedinger", [] { return dirac_suites({DiracSuite::Schrodinger}, 3, 5.0); });
  report(3, "evolution identity", [] { return dirac_suites({DiracSuite::EvolutionIdentity}, 4, 10.0); });
  report(4, "self-adjointness, compatibility", self_adjointness);
  report(5, "instantwise and C(R) structure", instantwise);
  report(6, "Ehrenfest oscillator", ehrenfest);
  report(7, "convergence orders", convergence);
  report(8, "frame covariance", frame_covariance);
  report(9, "operator Heisenberg check", heisenberg);
  report(10, "CLI determinism", determinism);
  std::cout << "acceptance: " << (10 - failures) << "/10 criteria pass" << std::endl;
  return failures;
}
