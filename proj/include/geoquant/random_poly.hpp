#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "geoquant/polynomial.hpp"

namespace geoquant {

/// Knobs for seeded random polynomials used by the verification suites.
struct RandomPolyOptions {
  unsigned max_degree = 3;
  unsigned max_terms = 6;
  /// Cap on the joint degree in the momenta of each generated monomial.
  unsigned max_momentum_degree = std::numeric_limits<unsigned>::max();
  bool use_time = true;
  bool use_p0 = false;
  bool use_momenta = true;
  bool real = true;
  long numerator_range = 5;
  long max_denominator = 3;
};

/// Deterministic for a given engine state: draws only raw 64-bit words.
Polynomial random_polynomial(int dim, const RandomPolyOptions& opts, std::mt19937_64& rng);

}  // namespace geoquant
