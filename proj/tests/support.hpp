#pragma once

// Shared helpers for the test binaries: random generators and short constructors.

#include <random>
#include <string>
#include <vector>

#include "dtk/parser.hpp"
#include "dtk/poly.hpp"
#include "dtk/unipoly.hpp"

namespace dtk::testing {

inline RatPoly P(const std::string& text, const Ring& ring) { return parse_poly(text, ring); }

inline Rat Q(const std::string& text) { return parse_rational(text); }

inline UniPoly U(const std::string& text) {
  static const Ring ring({"x"});
  return UniPoly::from_poly(parse_poly(text, ring), 0);
}

/// Sparse random polynomial with small integer coefficients.
inline RatPoly random_poly(std::mt19937& rng, const Ring& ring, int max_degree, int max_terms = 4,
                           int coeff_range = 3) {
  std::uniform_int_distribution<int> coef(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  const auto monos = monomials_up_to(ring.size(), max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  RatPoly p(ring);
  const int n = nterms(rng);
  for (int k = 0; k < n; ++k) p.add_term(monos[pick(rng)], coef(rng));
  return p;
}

inline UniPoly random_unipoly(std::mt19937& rng, int degree, int coeff_range = 4) {
  std::uniform_int_distribution<int> coef(-coeff_range, coeff_range);
  std::vector<Rat> c(degree + 1);
  for (auto& v : c) v = coef(rng);
  if (c.back() == 0) c.back() = 1;
  return UniPoly(c);
}

}  // namespace dtk::testing
