#pragma once

// Model files: a flat sectioned key/value format.
//
//   [model]    dim=1  hamiltonian="0.5*p1^2 + 0.5*q1^2"
//   [frame]    velocity="0"            (one entry per axis)
//              connection="t, q1"      (optional; Gamma^k polynomials for the symbolic check)
//   [grid]     min=-12 max=12 points=1024   (one entry, or one per axis)
//   [initial]  center_q=1.0 center_p=0.0 width=0.7   (one entry per axis)
//   [evolve]   dt=0.001 steps=6284 observables="q1,p1,0.5*p1^2+0.5*q1^2"
//
// Keys may share a line with their section header or each other; values
// containing spaces must be double-quoted. Blanks around '=' are allowed. '#' starts a comment. Lists are
// comma separated. Every number goes through the expression parser, so
// decimals are exact before conversion to double.

#include <string>
#include <string_view>
#include <vector>

#include "geoquant/error.hpp"
#include "geoquant/grid.hpp"
#include "geoquant/poisson.hpp"

namespace geoquant {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& section, const std::string& key, const std::string& reason)
      : Error("[" + section + "] " + key + ": " + reason), section_(section), key_(key) {}

  const std::string& section() const { return section_; }
  const std::string& key() const { return key_; }

 private:
  std::string section_;
  std::string key_;
};

struct EvolveSettings {
  double dt = 0.0;
  std::size_t steps = 0;
  std::vector<std::string> observable_text;
  std::vector<PhaseFunction> observables;
};

struct HamiltonianSpec {
  int dim;
  std::string hamiltonian_text;
  PhaseFunction hamiltonian;
  /// Exact frame velocity; numerics use its double image.
  std::vector<Rational> velocity;
  /// Gamma^k: the `connection` key if present, otherwise the constant velocity.
  FrameConnection frame;
  GridSpec grid;
  PacketParams initial;
  EvolveSettings evolve;

  std::vector<double> velocity_values() const;
};

/// Parses and validates a model file. Every failure is a ConfigError naming
/// the section and key.
HamiltonianSpec parse_config(std::string_view text);
HamiltonianSpec load_config(const std::string& path);

}  // namespace geoquant
