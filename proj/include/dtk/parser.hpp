#pragma once

// Expression grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := rational | var | '(' expr ')'
//   rational := nat ('/' nat)?
// No implicit multiplication. Whitespace is ignored between tokens.

#include <string_view>

#include "dtk/poly.hpp"

namespace dtk {

/// Throws SyntaxError or UnknownVariable with a 0-based offset into `text`.
RatPoly parse_poly(std::string_view text, const Ring& ring);

/// Parses a rational literal such as "-3/4" or "5".
Rat parse_rational(std::string_view text);

}  // namespace dtk
