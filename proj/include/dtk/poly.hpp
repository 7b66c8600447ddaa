#pragma once

// Exact multivariate polynomials over Q.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtk/errors.hpp"

namespace dtk {

using Rat = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rat& q);

/// Exponent vector, one slot per ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  int total_degree() const noexcept;
  bool is_one() const noexcept;
  bool divides(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other, *this).
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  /// Plain lexicographic comparison of exponent vectors (x_0 > x_1 > ...).
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

/// Graded-lex "greater": the canonical storage and printing order.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

/// Ordered variable-name list. Copies share storage.
class Ring {
 public:
  Ring() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  /// This ring followed by `extra` names; throws if a name collides.
  Ring extended(const std::vector<std::string>& extra) const;
  /// A name not present in the ring, starting from `base`.
  std::string fresh_name(const std::string& base) const;

  bool operator==(const Ring& other) const {
    return names_ == other.names_ || *names_ == *other.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

class RatPoly {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexGreater>;

  RatPoly() = default;
  explicit RatPoly(Ring ring) : ring_(std::move(ring)) {}
  RatPoly(Ring ring, const Rat& c);
  RatPoly(Ring ring, TermMap terms);

  static RatPoly variable(const Ring& ring, std::size_t index);
  static RatPoly variable(const Ring& ring, std::string_view name);
  static RatPoly monomial(const Ring& ring, Monomial m, const Rat& c = 1);

  const Ring& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rat constant_term() const;
  Rat coefficient(const Monomial& m) const;
  /// Largest monomial in graded-lex order. Requires nonzero.
  const Monomial& leading_monomial() const;
  const Rat& leading_coefficient() const;
  /// -1 for the zero polynomial.
  int total_degree() const noexcept;
  int degree_in(std::size_t var) const noexcept;
  bool involves(std::size_t var) const noexcept;

  void add_term(const Monomial& m, const Rat& c);

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const Rat& c);
  RatPoly operator-() const;
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(RatPoly a, const Rat& c) { return a *= c; }
  friend RatPoly operator*(const Rat& c, RatPoly a) { return a *= c; }
  bool operator==(const RatPoly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }

  RatPoly pow(unsigned e) const;
  RatPoly derivative(std::size_t var) const;
  RatPoly mul_monomial(const Monomial& m) const;

  Rat evaluate(std::span<const Rat> point) const;
  double evaluate(std::span<const double> point) const;

  /// Replace variable `var` by `value` (same ring).
  RatPoly substitute(std::size_t var, const RatPoly& value) const;
  RatPoly substitute(std::size_t var, const Rat& value) const;
  /// Re-express in `target`, variable i of this ring becoming variable var_map[i] of `target`.
  RatPoly map_to(const Ring& target, std::span<const std::size_t> var_map) const;
  /// Re-express in `target` by variable name; every involved variable must exist there.
  RatPoly rename_into(const Ring& target) const;

  /// Makes the leading coefficient 1 (zero stays zero).
  RatPoly monic() const;
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  RatPoly primitive() const;

  std::string to_string() const;

 private:
  Ring ring_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const RatPoly& p);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<RatPoly> divide_exact(const RatPoly& a, const RatPoly& b);

/// Greatest common divisor, monic in graded-lex order; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// All monomials in `nvars` variables of total degree <= degree, graded-lex descending.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree);
/// All monomials of total degree exactly `degree`, graded-lex descending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);

void require_same_ring(const Ring& a, const Ring& b, const char* where);

}  // namespace dtk
