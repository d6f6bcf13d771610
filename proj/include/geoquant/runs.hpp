#pragma once

// Batch experiments behind the command line front end. Every report and CSV
// is a pure function of its inputs; wall-clock timings are kept out of them.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoquant/config.hpp"
#include "geoquant/evolution.hpp"
#include "geoquant/quantize.hpp"

namespace geoquant {

enum class CheckStatus { Pass, Fail, Info };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Info;
  /// Defect count, max error or drift, depending on the check.
  double metric = 0.0;
  std::string detail;
  /// Seconds spent; reported on stderr only.
  double seconds = 0.0;
};

struct RunReport {
  std::string command;
  std::vector<CheckResult> checks;

  /// False if any check has status Fail.
  bool passed() const;
  /// One header line plus one tab-separated line per check:
  ///   name <TAB> PASS|FAIL|INFO <TAB> metric (%.17g) <TAB> detail
  std::string to_text() const;
  /// "name: 0.123 s" lines.
  std::string timings() const;
};

// ------------------------------------------------------------- check-dirac

enum class DiracSuite { PrequantT, PrequantV, Schrodinger, EvolutionIdentity };

std::string to_string(DiracSuite s);

/// `trials` seeded random pairs in fibre dimension `dim`:
///  PrequantT          f, g on T*Q (p0 allowed), total degree <= degree
///  PrequantV          f, g on V*Q, total degree <= degree
///  Schrodinger        vertical-affine f, g on V*Q, total degree <= degree
///  EvolutionIdentity  f on V*Q and H on V*Q, total degree <= degree
/// Passes iff every defect is the zero operator (zero function for the
/// evolution identity). The detail of a failure prints the first
/// counterexample. The random stream depends only on (seed, suite, dim).
CheckResult run_dirac_suite(DiracSuite suite, int dim, unsigned trials, unsigned degree, std::uint64_t seed);

/// All four suites for each dimension in `dims`.
RunReport run_check_dirac(const std::vector<int>& dims, unsigned trials, unsigned degree, std::uint64_t seed);
/// Dimensions taken from the spec.
RunReport run_check_dirac(const HamiltonianSpec& spec, unsigned trials, unsigned degree, std::uint64_t seed);

// ------------------------------------------------------------------ evolve

struct EvolveSeries {
  std::vector<ClassicalState> classical;
  /// quantum_t[n] is the time of the n-th quantum sample.
  std::vector<double> quantum_t;
  /// expectations[n][j] = <f_j^> at sample n.
  std::vector<std::vector<std::complex<double>>> expectations;
  std::vector<double> norm;
  /// Ehrenfest comparison of <q^k>, <p_k> against the classical run.
  double max_q_error = 0.0;
  double max_p_error = 0.0;
  /// max |<H^>(t) - <H^>(0)|, or unset for time-dependent H.
  std::optional<double> energy_drift;
  double norm_drift = 0.0;
};

/// RK4 for the packet centre and Crank-Nicolson for the packet, `steps`
/// steps of `dt` from t = 0. Solver failures are rethrown as NumericError
/// naming the step index.
EvolveSeries simulate_evolution(const HamiltonianSpec& spec);

/// Largest norm change accepted by run_evolve.
inline constexpr double kNormDriftTolerance = 1e-8;

/// Writes <out>/classical.csv and <out>/quantum.csv.
///   classical.csv: t, q1..qm, p1..pm
///   quantum.csv:   t, re_<f>, im_<f> for each observable f, norm
/// All values use %.17g.
RunReport run_evolve(const HamiltonianSpec& spec, const std::string& out_dir);

// ----------------------------------------------------------- frame-compare

struct FrameCompareSeries {
  std::vector<double> t;
  /// Moving-frame expectations via evolve-then-transform (a) and
  /// transform-then-evolve (b).
  std::vector<std::vector<double>> q_a, q_b, p_a, p_b;
  double max_q_deviation = 0.0;
  double max_p_deviation = 0.0;
};

/// Route a evolves with H in the rest frame and transforms every slice.
/// Route b transforms the initial slice and evolves with the frame energy
/// H - p.v written in co-moving coordinates q' = q - v t, carrying the
/// boost phase analytically.
FrameCompareSeries simulate_frame_compare(const HamiltonianSpec& spec, const std::vector<Rational>& velocity);

inline constexpr double kFrameDeviationTolerance = 1e-4;

/// Checks H == p_k Gamma^k + (H - p_k Gamma^k) for the spec's frame, then
/// runs both routes. Writes <out>/frame_compare.csv:
///   t, qa1.., qb1.., pa1.., pb1..
RunReport run_frame_compare(const HamiltonianSpec& spec, const std::vector<Rational>& velocity,
                            const std::string& out_dir);

/// %.17g
std::string format_double(double v);

}  // namespace geoquant
