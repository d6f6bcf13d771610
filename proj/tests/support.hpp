#pragma once

#include <random>
#include <string>

#include "geoquant/parser.hpp"
#include "geoquant/poisson.hpp"
#include "geoquant/random_poly.hpp"

namespace testing {

inline geoquant::Polynomial P(const std::string& text, int dim = 1) { return geoquant::parse_polynomial(text, dim); }
inline geoquant::PhaseFunction V(const std::string& text, int dim = 1) {
  return geoquant::PhaseFunction::on_vq(P(text, dim));
}
inline geoquant::PhaseFunction T(const std::string& text, int dim = 1) {
  return geoquant::PhaseFunction::on_tq(P(text, dim));
}

inline geoquant::Polynomial random_poly(int dim, std::mt19937_64& rng, unsigned degree = 3, bool p0 = false,
                                        unsigned momentum_degree = 99, bool real = true) {
  geoquant::RandomPolyOptions o;
  o.max_degree = degree;
  o.use_p0 = p0;
  o.max_momentum_degree = momentum_degree;
  o.real = real;
  return geoquant::random_polynomial(dim, o, rng);
}

}  // namespace testing
