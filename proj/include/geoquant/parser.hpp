#pragma once

#include <string_view>

#include "geoquant/polynomial.hpp"

namespace geoquant {

/// Parses an expression over t, q1..qm, p0, p1..pm into canonical form.
///
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := number | variable | '(' expr ')'
///   number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]  |  digits '/' digits
///
/// Decimal and scientific literals are converted exactly (0.5 -> 1/2).
/// Throws ParseError carrying the byte offset of the offending token.
Polynomial parse_polynomial(std::string_view text, int dim);

}  // namespace geoquant
