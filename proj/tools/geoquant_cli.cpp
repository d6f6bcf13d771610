// geoquant: symbolic Dirac checks, packet evolution and frame comparison.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad config or
// arguments, 3 runtime or solver error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "geoquant/config.hpp"
#include "geoquant/parser.hpp"
#include "geoquant/runs.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  unsigned trials = 200;
  unsigned degree = 3;
  std::string velocity;
};

geoquant::HamiltonianSpec require_config(const Options& o) {
  if (o.config.empty()) throw geoquant::ConfigError("<cli>", "--config", "required for this subcommand");
  return geoquant::load_config(o.config);
}

std::vector<geoquant::Rational> parse_velocity(const std::string& text, int dim) {
  std::vector<geoquant::Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    geoquant::Polynomial p(1);
    try {
      p = geoquant::parse_polynomial(item, 1);
    } catch (const geoquant::ParseError& e) {
      throw geoquant::ConfigError("<cli>", "--velocity", e.what());
    }
    if (p.total_degree() > 0 || !p.constant_term().is_real()) {
      throw geoquant::ConfigError("<cli>", "--velocity", "'" + item + "' is not a real number");
    }
    out.push_back(p.constant_term().re());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() == 1 && dim > 1) out.resize(static_cast<std::size_t>(dim), out.front());
  if (static_cast<int>(out.size()) != dim) throw geoquant::ConfigError("<cli>", "--velocity", "wrong number of entries");
  return out;
}

int finish(const geoquant::RunReport& report, const Options& o, const std::string& report_name) {
  const std::string text = report.to_text();
  std::cout << text;
  std::cerr << report.timings();
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    std::ofstream f(std::filesystem::path(o.out) / report_name, std::ios::binary);
    if (!f) throw geoquant::Error("cannot write report to " + o.out);
    f << text;
  }
  return report.passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric quantization checks and half-density evolution"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--config", o.config, "Model file");
  app.add_option("--out", o.out, "Output directory for CSV and report files");
  app.add_option("--seed", o.seed, "Random seed for check-dirac");
  app.add_option("--trials", o.trials, "Random pairs per suite")->check(CLI::PositiveNumber);
  app.add_option("--degree", o.degree, "Maximum total degree of random polynomials");

  auto* check = app.add_subcommand("check-dirac", "Exact symbolic Dirac and evolution-identity suites");
  auto* evolve = app.add_subcommand("evolve", "Classical and Crank-Nicolson evolution of a Gaussian packet");
  auto* frame = app.add_subcommand("frame-compare", "Rest frame vs moving frame evolution");
  frame->add_option("--velocity", o.velocity, "Frame velocity (comma list); defaults to [frame] velocity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (check->parsed()) {
      const auto report = o.config.empty()
                               ? geoquant::run_check_dirac(std::vector<int>{1, 2}, o.trials, o.degree, o.seed)
                               : geoquant::run_check_dirac(require_config(o), o.trials, o.degree, o.seed);
      return finish(report, o, "check_dirac_report.txt");
    }
    const geoquant::HamiltonianSpec spec = require_config(o);
    const std::string out_dir = o.out.empty() ? "." : o.out;
    if (evolve->parsed()) return finish(geoquant::run_evolve(spec, out_dir), o, "evolve_report.txt");
    const auto velocity = o.velocity.empty() ? spec.velocity : parse_velocity(o.velocity, spec.dim);
    return finish(geoquant::run_frame_compare(spec, velocity, out_dir), o, "frame_compare_report.txt");
  } catch (const geoquant::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
