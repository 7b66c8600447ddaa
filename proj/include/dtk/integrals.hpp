#pragma once

// Bounded search for rational first integrals: polynomial integrals by exact
// linear algebra, Darboux polynomials by Groebner systems, and their
// multiplicative assembly into rational integrals.

#include <string>
#include <vector>

#include "dtk/dvariety.hpp"
#include "dtk/parallel.hpp"

namespace dtk {

/// v(poly) = cofactor * poly modulo I(X).
struct DarbouxElement {
  RatPoly poly;
  RatPoly cofactor;
  bool operator==(const DarbouxElement&) const = default;
};

struct SearchOptions {
  Execution execution = Execution::Parallel;
  /// Cap on the number of coefficient unknowns in one linear or polynomial system.
  std::size_t max_unknowns = 4000;
};

/// Monomials of degree <= D outside the leading ideal of I (grevlex), in
/// graded-lex descending order. They index polynomials modulo I.
std::vector<Monomial> standard_monomials(const Ideal& ideal, int max_degree);

/// Basis of nonconstant f with deg f <= D and v(f) in I(X), up to constants
/// and I(X). Each element is written on standard monomials, primitive over Z
/// with a positive leading coefficient. Throws ResourceLimit past max_unknowns.
std::vector<RatPoly> polynomial_integrals(const DVariety& x, int max_degree, const SearchOptions& opts = {});

struct DarbouxSearch {
  std::vector<DarbouxElement> elements;
  std::size_t normalizations = 0;                 // leading-monomial systems attempted
  std::vector<std::string> skipped;               // normalizations abandoned on ResourceLimit
  bool complete() const noexcept { return skipped.empty(); }
};

/// Darboux polynomials of degree <= D, monic in graded-lex order and pairwise
/// distinct. Degree 1 on an affine linear field comes from rational
/// eigenspaces; everything else from one Groebner system per candidate
/// leading monomial. Positive-dimensional families contribute the rational
/// points of a slice, so coverage is complete only relative to that sweep.
DarbouxSearch darboux_search(const DVariety& x, int max_degree, const SearchOptions& opts = {});
/// As darboux_search, but throws ResourceLimit if any normalization was skipped.
std::vector<DarbouxElement> darboux_polynomials(const DVariety& x, int max_degree, const SearchOptions& opts = {});

/// Rational integrals prod p_i^{a_i} from integer relations sum a_i k_i = 0
/// among the cofactors. Each candidate is verified with is_first_integral and
/// kept only when nonconstant on X.
std::vector<RatFunction> assemble_rational_integrals(const DVariety& x, const std::vector<DarbouxElement>& elements);

enum class Verdict { Fails, Inconclusive };
std::string to_string(Verdict v);

struct Witness {
  int power = 1;  // found on product(x, power)
  RatFunction function;
};

struct PowerCoverage {
  int power = 1;
  int degree = 1;
  bool complete = true;
  std::size_t darboux_elements = 0;
  std::string note;  // why coverage is partial, if it is
};

/// Bounded form of "no power of X has a nonconstant rational first integral".
/// Never concludes that the property holds.
struct IntegralReport {
  Verdict verdict = Verdict::Inconclusive;
  int max_power = 0;
  int max_degree = 0;
  std::vector<Witness> witnesses;       // ordered by power
  std::vector<PowerCoverage> searched;  // one entry per power 1..N
};

IntegralReport property_O_bounded(const DVariety& x, int max_power, int max_degree, const SearchOptions& opts = {});

}  // namespace dtk
