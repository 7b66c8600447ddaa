#pragma once

#include <utility>
#include <vector>

#include "dtk/poly.hpp"

namespace dtk {

/// Dense univariate polynomial over Q, lowest degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  static UniPoly monomial(int degree, const Rat& c = 1);
  static UniPoly constant(const Rat& c) { return UniPoly({c}); }
  /// p must involve at most variable `var`.
  static UniPoly from_poly(const RatPoly& p, std::size_t var);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rat>& coefficients() const noexcept { return coeffs_; }
  Rat coefficient(int k) const;
  const Rat& leading_coefficient() const;

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Integer coefficients, gcd 1, positive leading coefficient.
  UniPoly primitive() const;
  Rat evaluate(const Rat& x) const;
  double evaluate(double x) const;
  UniPoly compose_scale(const Rat& c) const;  // P(c x)

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rat& c) const;
  bool operator==(const UniPoly& o) const = default;

  RatPoly to_poly(const Ring& ring, std::size_t var) const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

/// Quotient and remainder of Euclidean division.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0,0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct SquarefreeFactor {
  UniPoly factor;  // monic, squarefree
  int multiplicity;
  bool operator==(const SquarefreeFactor&) const = default;
};

/// Yun's decomposition: P = lc(P) * prod factor^multiplicity. Throws ZeroPolynomial.
std::vector<SquarefreeFactor> squarefree_split(const UniPoly& p);
UniPoly squarefree_part(const UniPoly& p);

/// Resultant as the determinant of the Sylvester matrix whose first deg(B) rows
/// hold the coefficients of A (leading coefficient first) and whose last deg(A)
/// rows hold those of B. Equals lc(A)^deg(B) * prod B(alpha) over the roots of A;
/// Res(x, x - 1) = -1. Throws ZeroPolynomial.
Rat resultant(const UniPoly& a, const UniPoly& b);

/// Res_x(A, B) for A, B in Q[x, y] given as polynomials in a two-variable ring
/// (x = variable `x`, y = variable `y`); the result is a polynomial in y.
/// Uses formal x-degrees, so it specializes correctly at every y.
UniPoly resultant_x(const RatPoly& a, const RatPoly& b, std::size_t x, std::size_t y);

struct RationalRoot {
  Rat root;
  int multiplicity;
  bool operator==(const RationalRoot&) const = default;
};

/// All rational roots with multiplicities, in increasing order. Throws ZeroPolynomial.
std::vector<RationalRoot> rational_roots(const UniPoly& p);

/// Divisors of |n| (n != 0), increasing.
std::vector<Integer> positive_divisors(const Integer& n);

}  // namespace dtk
