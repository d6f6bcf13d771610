#include "geoquant/random_poly.hpp"

#include <vector>

namespace geoquant {
namespace {

// std distributions are implementation-defined; reports must be byte-stable.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

long in_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

Rational nonzero_rational(std::mt19937_64& rng, const RandomPolyOptions& opts) {
  long num = in_range(rng, 1, opts.numerator_range);
  if (below(rng, 2) == 1) num = -num;
  Rational r(num, in_range(rng, 1, opts.max_denominator));
  r.canonicalize();
  return r;
}

}  // namespace

Polynomial random_polynomial(int dim, const RandomPolyOptions& opts, std::mt19937_64& rng) {
  std::vector<std::size_t> vars;
  std::vector<bool> is_momentum;
  for (std::size_t i = 0; i < num_vars(dim); ++i) {
    const Variable v = var_at(i, dim);
    if (v.kind == VarKind::Time && !opts.use_time) continue;
    if (v.kind == VarKind::P0 && !opts.use_p0) continue;
    if (v.kind == VarKind::P && !opts.use_momenta) continue;
    vars.push_back(i);
    is_momentum.push_back(v.is_momentum());
  }

  Polynomial out(dim);
  const auto n_terms = static_cast<unsigned>(in_range(rng, 1, static_cast<long>(opts.max_terms)));
  for (unsigned term = 0; term < n_terms; ++term) {
    Exponents e(num_vars(dim), 0);
    const auto degree = static_cast<unsigned>(in_range(rng, 0, static_cast<long>(opts.max_degree)));
    unsigned momentum = 0;
    for (unsigned j = 0; j < degree; ++j) {
      const std::size_t slot = below(rng, vars.size());
      if (is_momentum[slot]) {
        if (momentum >= opts.max_momentum_degree) continue;
        ++momentum;
      }
      ++e[vars[slot]];
    }
    Rational re = nonzero_rational(rng, opts);
    Rational im = 0;
    if (!opts.real && below(rng, 2) == 1) im = nonzero_rational(rng, opts);
    out.add_term(e, ComplexRational(re, im));
  }
  return out;
}

}  // namespace geoquant
