#include "geoquant/runs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "geoquant/random_poly.hpp"

namespace geoquant {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
  out << '\n';
}

PhaseFunction coordinate(int dim, Variable v) { return PhaseFunction::on_vq(Polynomial::variable(dim, v)); }

struct Observables {
  std::vector<DiscreteOperator> q, p;
};

Observables position_momentum(int dim, const GridSpec& grid) {
  Observables out;
  for (int k = 1; k <= dim; ++k) {
    out.q.emplace_back(quantize_observable(coordinate(dim, Variable::q(k))), grid);
    out.p.emplace_back(quantize_observable(coordinate(dim, Variable::p(k))), grid);
  }
  return out;
}

GridState checked_step(CrankNicolson& cn, const GridState& s, double dt, std::size_t index) {
  try {
    return cn.step(s, dt);
  } catch (const NumericError& e) {
    throw NumericError("step " + std::to_string(index) + ": " + e.what());
  }
}

std::string describe_pair(const char* a_name, const Polynomial& a, const char* b_name, const Polynomial& b) {
  return std::string(a_name) + "=" + to_string(a) + "; " + b_name + "=" + to_string(b);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Info: return "INFO";
  }
  return "?";
}

bool RunReport::passed() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "# " << command << '\n';
  for (const auto& c : checks) {
    os << c.name << '\t' << to_string(c.status) << '\t' << format_double(c.metric) << '\t' << c.detail << '\n';
  }
  os << "# result " << (passed() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::string RunReport::timings() const {
  std::ostringstream os;
  os.precision(3);
  for (const auto& c : checks) os << c.name << ": " << std::fixed << c.seconds << " s\n";
  return os.str();
}

// ------------------------------------------------------------- check-dirac

std::string to_string(DiracSuite s) {
  switch (s) {
    case DiracSuite::PrequantT: return "prequant_t";
    case DiracSuite::PrequantV: return "prequant_v";
    case DiracSuite::Schrodinger: return "schrodinger";
    case DiracSuite::EvolutionIdentity: return "evolution_identity";
  }
  return "?";
}

CheckResult run_dirac_suite(DiracSuite suite, int dim, unsigned trials, unsigned degree, std::uint64_t seed) {
  const auto start = Clock::now();
  CheckResult result;
  result.name = to_string(suite) + "_m" + std::to_string(dim);

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(dim)};
  std::mt19937_64 rng(seq);
  RandomPolyOptions opts;
  opts.max_degree = degree;
  opts.use_p0 = suite == DiracSuite::PrequantT;
  if (suite == DiracSuite::Schrodinger) opts.max_momentum_degree = 1;

  unsigned failures = 0;
  for (unsigned trial = 0; trial < trials; ++trial) {
    const Polynomial a = random_polynomial(dim, opts, rng);
    const Polynomial b = random_polynomial(dim, opts, rng);
    std::string counterexample;
    switch (suite) {
      case DiracSuite::PrequantT:
      case DiracSuite::PrequantV:
      case DiracSuite::Schrodinger: {
        const Space space = suite == DiracSuite::PrequantT ? Space::OnTQ : Space::OnVQ;
        const QuantizationMap map = suite == DiracSuite::PrequantT   ? QuantizationMap::PrequantT
                                    : suite == DiracSuite::PrequantV ? QuantizationMap::PrequantV
                                                                     : QuantizationMap::Schrodinger;
        const DiffOperator defect = dirac_defect({a, space}, {b, space}, map);
        if (!defect.is_zero()) counterexample = describe_pair("f", a, "g", b) + "; defect=" + to_string(defect);
        break;
      }
      case DiracSuite::EvolutionIdentity: {
        const PhaseFunction defect = evolution_identity_defect(PhaseFunction::on_vq(a), PhaseFunction::on_vq(b));
        if (!defect.poly().is_zero()) {
          counterexample = describe_pair("f", a, "H", b) + "; defect=" + to_string(defect.poly());
        }
        break;
      }
    }
    if (!counterexample.empty() && failures++ == 0) {
      result.detail = "trial " + std::to_string(trial) + ": " + counterexample;
    }
  }
  result.metric = failures;
  result.status = failures == 0 ? CheckStatus::Pass : CheckStatus::Fail;
  const std::string summary = std::to_string(trials) + " trials, degree<=" + std::to_string(degree) + ", " +
                              std::to_string(failures) + " nonzero defects";
  result.detail = result.detail.empty() ? summary : summary + "; first at " + result.detail;
  result.seconds = seconds_since(start);
  return result;
}

RunReport run_check_dirac(const std::vector<int>& dims, unsigned trials, unsigned degree, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  RunReport report;
  report.command = "check-dirac seed=" + std::to_string(seed) + " trials=" + std::to_string(trials) +
                   " degree=" + std::to_string(degree);
  for (int dim : dims) {
    for (auto suite : {DiracSuite::PrequantT, DiracSuite::PrequantV, DiracSuite::Schrodinger,
                       DiracSuite::EvolutionIdentity}) {
      report.checks.push_back(run_dirac_suite(suite, dim, trials, degree, seed));
    }
  }
  return report;
}

RunReport run_check_dirac(const HamiltonianSpec& spec, unsigned trials, unsigned degree, std::uint64_t seed) {
  return run_check_dirac(std::vector<int>{spec.dim}, trials, degree, seed);
}

// ------------------------------------------------------------------ evolve

EvolveSeries simulate_evolution(const HamiltonianSpec& spec) {
  const int m = spec.dim;
  const double dt = spec.evolve.dt;
  EvolveSeries out;

  HamiltonFlow flow(spec.hamiltonian);
  ClassicalState c{0.0, spec.initial.center_q, spec.initial.center_p};

  CrankNicolson cn(spec.hamiltonian, spec.grid);
  GridState s = gaussian_packet(spec.grid, spec.initial, 0.0);
  std::vector<DiscreteOperator> observables;
  for (const auto& f : spec.evolve.observables) observables.emplace_back(quantize_observable(f), spec.grid);
  Observables qp = position_momentum(m, spec.grid);
  const bool conservative = !spec.hamiltonian.poly().depends_on(Variable::t());
  DiscreteOperator energy(cn.hamiltonian(), spec.grid);
  double energy0 = 0.0;
  double norm0 = 0.0;

  for (std::size_t n = 0;; ++n) {
    out.classical.push_back(c);
    out.quantum_t.push_back(s.t);
    std::vector<std::complex<double>> row;
    for (auto& op : observables) row.push_back(expectation(op, s));
    out.expectations.push_back(std::move(row));
    const double norm = norm_squared(s);
    out.norm.push_back(norm);
    for (int k = 0; k < m; ++k) {
      out.max_q_error = std::max(out.max_q_error, std::abs(expectation(qp.q[k], s).real() - c.q[k]));
      out.max_p_error = std::max(out.max_p_error, std::abs(expectation(qp.p[k], s).real() - c.p[k]));
    }
    if (n == 0) {
      norm0 = norm;
      if (conservative) energy0 = expectation(energy, s).real();
    } else {
      out.norm_drift = std::max(out.norm_drift, std::abs(norm - norm0));
      if (conservative) {
        out.energy_drift = std::max(out.energy_drift.value_or(0.0), std::abs(expectation(energy, s).real() - energy0));
      }
    }
    if (n == spec.evolve.steps) break;
    c = flow.step(c, dt);
    s = checked_step(cn, s, dt, n + 1);
  }
  if (conservative && !out.energy_drift) out.energy_drift = 0.0;
  return out;
}

RunReport run_evolve(const HamiltonianSpec& spec, const std::string& out_dir) {
  const auto start = Clock::now();
  const EvolveSeries series = simulate_evolution(spec);
  const double elapsed = seconds_since(start);
  const int m = spec.dim;

  {
    auto out = open_output(out_dir, "classical.csv");
    out << "t";
    for (int k = 1; k <= m; ++k) out << ",q" << k;
    for (int k = 1; k <= m; ++k) out << ",p" << k;
    out << '\n';
    for (const auto& c : series.classical) {
      std::vector<double> row{c.t};
      row.insert(row.end(), c.q.begin(), c.q.end());
      row.insert(row.end(), c.p.begin(), c.p.end());
      write_row(out, row);
    }
  }
  {
    auto out = open_output(out_dir, "quantum.csv");
    out << "t";
    for (const auto& f : spec.evolve.observable_text) out << ",\"re_" << f << "\",\"im_" << f << '"';
    out << ",norm\n";
    for (std::size_t n = 0; n < series.quantum_t.size(); ++n) {
      std::vector<double> row{series.quantum_t[n]};
      for (const auto& e : series.expectations[n]) {
        row.push_back(e.real());
        row.push_back(e.imag());
      }
      row.push_back(series.norm[n]);
      write_row(out, row);
    }
  }

  RunReport report;
  report.command = "evolve dim=" + std::to_string(m) + " steps=" + std::to_string(spec.evolve.steps) +
                   " dt=" + format_double(spec.evolve.dt);
  const bool norm_ok = series.norm_drift <= kNormDriftTolerance;
  report.checks.push_back({"norm_drift", norm_ok ? CheckStatus::Pass : CheckStatus::Fail, series.norm_drift,
                           "max |<rho|rho>(t) - <rho|rho>(0)|, tolerance 1e-8", elapsed});
  report.checks.push_back({"ehrenfest_q", CheckStatus::Info, series.max_q_error, "max |<q^> - q_classical|", 0.0});
  report.checks.push_back({"ehrenfest_p", CheckStatus::Info, series.max_p_error, "max |<p^> - p_classical|", 0.0});
  if (series.energy_drift) {
    report.checks.push_back({"energy_drift", CheckStatus::Info, *series.energy_drift, "max |<H^>(t) - <H^>(0)|", 0.0});
  }
  return report;
}

// ----------------------------------------------------------- frame-compare

FrameCompareSeries simulate_frame_compare(const HamiltonianSpec& spec, const std::vector<Rational>& velocity) {
  const int m = spec.dim;
  if (static_cast<int>(velocity.size()) != m) throw MismatchError("velocity has wrong dimension");
  MovingFrame frame;
  for (const auto& v : velocity) frame.velocity.push_back(to_double(v));

  // Frame energy in co-moving coordinates: q -> q' + v t.
  const PhaseFunction split = frame_split(spec.hamiltonian, FrameConnection::constant(m, velocity));
  AffineMap comoving;
  for (int k = 1; k <= m; ++k) {
    comoving.emplace(Variable::q(k), Polynomial::variable(m, Variable::q(k)) +
                                         Polynomial::variable(m, Variable::t()) *
                                             Polynomial::constant(m, ComplexRational(velocity[k - 1])));
  }
  const PhaseFunction h_moving = PhaseFunction::on_vq(substitute_affine(split.poly(), comoving));

  CrankNicolson rest(spec.hamiltonian, spec.grid);
  CrankNicolson moving(h_moving, spec.grid);
  Observables qp = position_momentum(m, spec.grid);

  GridState a = gaussian_packet(spec.grid, spec.initial, 0.0);
  GridState b = a;
  const double dt = spec.evolve.dt;
  FrameCompareSeries out;
  for (std::size_t n = 0;; ++n) {
    const GridState a_moving = frame_transform_grid(a, frame, FrameDirection::ToMoving);
    const GridState b_moving = boost_phase(b, frame, FrameDirection::ToMoving);
    std::vector<double> qa, qb, pa, pb;
    for (int k = 0; k < m; ++k) {
      qa.push_back(expectation(qp.q[k], a_moving).real());
      qb.push_back(expectation(qp.q[k], b_moving).real());
      pa.push_back(expectation(qp.p[k], a_moving).real());
      pb.push_back(expectation(qp.p[k], b_moving).real());
      out.max_q_deviation = std::max(out.max_q_deviation, std::abs(qa.back() - qb.back()));
      out.max_p_deviation = std::max(out.max_p_deviation, std::abs(pa.back() - pb.back()));
    }
    out.t.push_back(a.t);
    out.q_a.push_back(std::move(qa));
    out.q_b.push_back(std::move(qb));
    out.p_a.push_back(std::move(pa));
    out.p_b.push_back(std::move(pb));
    if (n == spec.evolve.steps) break;
    a = checked_step(rest, a, dt, n + 1);
    b = checked_step(moving, b, dt, n + 1);
  }
  return out;
}

RunReport run_frame_compare(const HamiltonianSpec& spec, const std::vector<Rational>& velocity,
                            const std::string& out_dir) {
  const int m = spec.dim;
  RunReport report;
  std::string v_text;
  for (const auto& v : velocity) v_text += (v_text.empty() ? "" : ",") + to_string(v);
  report.command = "frame-compare velocity=" + v_text + " steps=" + std::to_string(spec.evolve.steps) +
                   " dt=" + format_double(spec.evolve.dt);

  auto start = Clock::now();
  bool exact = true;
  std::string detail = "H == p.Gamma + (H - p.Gamma) for the configured frame and the velocity frame";
  for (const FrameConnection& frame : {spec.frame, FrameConnection::constant(m, velocity)}) {
    const Polynomial reassembled = frame_hamiltonian(frame).poly() + frame_split(spec.hamiltonian, frame).poly();
    if (!(reassembled == spec.hamiltonian.poly())) {
      exact = false;
      detail = "reassembled " + to_string(reassembled) + " != " + to_string(spec.hamiltonian.poly());
      break;
    }
  }
  report.checks.push_back(
      {"symbolic_reassembly", exact ? CheckStatus::Pass : CheckStatus::Fail, exact ? 0.0 : 1.0, detail,
       seconds_since(start)});

  start = Clock::now();
  const FrameCompareSeries series = simulate_frame_compare(spec, velocity);
  const double elapsed = seconds_since(start);
  auto status = [](double d) { return d <= kFrameDeviationTolerance ? CheckStatus::Pass : CheckStatus::Fail; };
  report.checks.push_back({"deviation_q", status(series.max_q_deviation), series.max_q_deviation,
                           "max |<q^>_a - <q^>_b| in the moving frame, tolerance 1e-4", elapsed});
  report.checks.push_back({"deviation_p", status(series.max_p_deviation), series.max_p_deviation,
                           "max |<p^>_a - <p^>_b| in the moving frame, tolerance 1e-4", 0.0});

  auto out = open_output(out_dir, "frame_compare.csv");
  out << "t";
  for (const char* prefix : {"qa", "qb", "pa", "pb"}) {
    for (int k = 1; k <= m; ++k) out << ',' << prefix << k;
  }
  out << '\n';
  for (std::size_t n = 0; n < series.t.size(); ++n) {
    std::vector<double> row{series.t[n]};
    for (const auto* col : {&series.q_a, &series.q_b, &series.p_a, &series.p_b}) {
      row.insert(row.end(), (*col)[n].begin(), (*col)[n].end());
    }
    write_row(out, row);
  }
  return report;
}

}  // namespace geoquant
