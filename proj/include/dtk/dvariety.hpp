#pragma once

// Affine D-varieties (X, v) over Q: an ideal of X together with a polynomial
// vector field tangent to it, and the derivation it induces.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dtk/groebner.hpp"
#include "dtk/poly.hpp"

namespace dtk {

class DVariety {
 public:
  /// Throws NotInvariant unless v(g) lies in `variety` for every generator g.
  DVariety(Ring ring, Ideal variety, std::vector<RatPoly> field);
  /// Affine space with the given field.
  static DVariety affine(const Ring& ring, std::vector<RatPoly> field);

  const Ring& ring() const noexcept { return ring_; }
  const Ideal& variety() const noexcept { return variety_; }
  const std::vector<RatPoly>& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return ring_.size(); }
  /// Largest total degree among the field components (-1 for the zero field).
  int field_degree() const noexcept;

 private:
  Ring ring_;
  Ideal variety_;
  std::vector<RatPoly> field_;
};

/// Reduced quotient of polynomials: gcd(numerator, denominator) = 1 and the
/// denominator is monic in graded-lex order.
class RatFunction {
 public:
  RatFunction() = default;
  /// Throws ZeroDenominator.
  RatFunction(RatPoly numerator, RatPoly denominator);
  explicit RatFunction(RatPoly polynomial);

  const RatPoly& numerator() const noexcept { return num_; }
  const RatPoly& denominator() const noexcept { return den_; }
  const Ring& ring() const noexcept { return num_.ring(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

  RatFunction inverse() const;
  RatFunction operator*(const RatFunction& o) const;
  bool operator==(const RatFunction& o) const = default;

  /// "p" when the denominator is 1, otherwise "p/q" with parentheses as needed.
  std::string to_string() const;

 private:
  RatPoly num_, den_;
};

/// Reads "p" or "p/q" with p, q in the polynomial grammar, the form printed by
/// RatFunction::to_string. A slash between two numbers is a rational literal.
/// Throws SyntaxError, UnknownVariable or ZeroDenominator.
RatFunction parse_rational_function(std::string_view text, const Ring& ring);

/// v(f) = sum_i f_i * df/dx_i. Throws RingMismatch.
RatPoly derive(const DVariety& x, const RatPoly& f);
/// Quotient rule, reduced.
RatFunction derive_rational(const DVariety& x, const RatFunction& f);

/// True iff v(g) reduces to zero modulo Z + I(X) for every generator g of Z.
bool is_invariant(const DVariety& x, const Ideal& z);

/// (X, v)^n on n renamed copies x_k -> x_k_1, ..., x_k_n (copy-major order).
DVariety product(const DVariety& x, int n);
/// Ring index of variable `var` of copy `copy` (0-based) inside product(x, n).
std::size_t product_index(const DVariety& x, int copy, std::size_t var);

/// (X, v) x (A^1, 0): the ring gains a fresh variable (named from "z") with zero field.
DVariety with_inert_coordinate(const DVariety& x, const std::string& base = "z");

/// Affine trace of the graph closure of f: (<q*z - p> + I(X)) : q^infinity, in
/// the ring of with_inert_coordinate(x).
Ideal graph_ideal(const DVariety& x, const RatFunction& f);

/// Quotient-rule test: v(f) reduces to zero modulo I(X).
/// Throws ZeroDenominator when the denominator lies in I(X).
bool is_first_integral(const DVariety& x, const RatFunction& f);
/// Graph-invariance test on (X, v) x (A^1, 0); agrees with is_first_integral.
bool is_first_integral_via_graph(const DVariety& x, const RatFunction& f);

/// True when f agrees with a constant on X.
bool is_constant_on(const DVariety& x, const RatFunction& f);

/// <p, q> + I(X): where the reduced numerator and denominator vanish together.
Ideal indeterminacy_locus(const DVariety& x, const RatFunction& f);

/// Splits an invariant Z along caller-supplied factors: each hint h yields the
/// component Z + <h>, checked for invariance. Without hints, Z is returned
/// whole unless a generator is visibly reducible (MissingHints).
std::vector<Ideal> invariant_components(const DVariety& x, const Ideal& z, const std::vector<RatPoly>& hints);

/// Cheap reducibility evidence: a monomial factor, a repeated factor, or a
/// rational root of a univariate polynomial of degree >= 2.
bool visibly_reducible(const RatPoly& g);

enum class DisintegrationStatus { Witnessed, Refuted, Inconclusive };
std::string to_string(DisintegrationStatus s);

struct DisintegrationVerdict {
  DisintegrationStatus status = DisintegrationStatus::Inconclusive;
  std::map<std::pair<int, int>, Ideal> pair_ideals;  // 1-based copy indices
  bool contained = false;                             // pullback intersection ideal J is inside Z
  int dim_pullbacks = 0;                              // dim V(J)
  int dim_z = 0;                                      // dim V(Z)
};

/// Checks Z against the intersection of the pullbacks of its pairwise projections.
/// Z must be an invariant ideal in the ring of product(x, n), assumed prime.
DisintegrationVerdict disintegration_witness(const DVariety& x, int n, const Ideal& z);

}  // namespace dtk
