#pragma once

// Ideals over Q[x_1..x_n]: Buchberger's algorithm with the normal selection
// strategy and Gebauer-Moeller pair criteria.

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dtk/poly.hpp"

namespace dtk {

enum class OrderKind { Lex, GrLex, GrevLex };

/// A monomial order, optionally over a permutation of the ring variables.
/// `precedence[0]` is the most significant variable; empty means ring order.
struct MonomialOrder {
  OrderKind kind = OrderKind::GrevLex;
  std::vector<std::size_t> precedence;

  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
  static MonomialOrder grlex() { return {OrderKind::GrLex, {}}; }
  static MonomialOrder grevlex() { return {OrderKind::GrevLex, {}}; }
  /// Lex order in which every variable outside `keep` dominates every kept one.
  static MonomialOrder elimination(const Ring& ring, const std::vector<std::size_t>& keep);

  /// <0, 0, >0 as a is smaller than, equal to, greater than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool operator==(const MonomialOrder&) const = default;
  auto operator<=>(const MonomialOrder&) const = default;
};

struct GroebnerLimits {
  std::size_t max_pairs = 10000;
  int max_degree = 60;

  /// Current process-wide defaults. The degree cap honours DTOOLKIT_MAX_DEGREE.
  static GroebnerLimits defaults();
  static void set_defaults(const GroebnerLimits& limits);
};

/// Total number of S-pairs reduced by this process (resource reporting).
std::size_t groebner_pair_counter();

class Ideal {
 public:
  Ideal() = default;
  Ideal(Ring ring, std::vector<RatPoly> generators);
  static Ideal zero(const Ring& ring) { return Ideal(ring, {}); }
  static Ideal unit(const Ring& ring) { return Ideal(ring, {RatPoly(ring, Rat(1))}); }

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<RatPoly>& generators() const noexcept { return generators_; }

  /// Reduced basis for `order`, computed once and cached.
  const std::vector<RatPoly>& basis(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  bool contains(const RatPoly& f) const;
  /// Every generator of `other` lies in this ideal.
  bool contains(const Ideal& other) const;
  bool is_unit() const;
  bool is_zero() const;

  Ideal operator+(const Ideal& other) const;
  Ideal with(const std::vector<RatPoly>& extra) const;
  /// Same generators re-expressed in `target` by variable name.
  Ideal rename_into(const Ring& target) const;

  std::string to_string() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<MonomialOrder, std::vector<RatPoly>> bases;
  };

  Ring ring_;
  std::vector<RatPoly> generators_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reduced Groebner basis, sorted by increasing leading monomial. Deterministic.
std::vector<RatPoly> groebner(const Ideal& ideal, const MonomialOrder& order = MonomialOrder::grevlex(),
                              const GroebnerLimits& limits = GroebnerLimits::defaults());

/// Leading monomial of a nonzero polynomial under `order`. Throws ZeroPolynomial.
Monomial leading_monomial(const RatPoly& p, const MonomialOrder& order);

/// Full reduction of f by a Groebner basis for `order`.
RatPoly reduce(const RatPoly& f, const std::vector<RatPoly>& basis, const MonomialOrder& order);

/// The unique remainder of f modulo the ideal (degree-reverse-lex basis); zero iff f in I.
RatPoly normal_form(const RatPoly& f, const Ideal& ideal);

/// Ideal of the closure of the projection onto `keep`, as an ideal of the same ring
/// whose generators only involve the kept variables.
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep);
Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& keep);

/// Krull dimension of V(I). Throws UnitIdeal for <1>.
int krull_dim(const Ideal& ideal);
/// Same as krull_dim but reports -1 for the empty variety.
int variety_dimension(const Ideal& ideal);
/// A largest set of variables independent modulo the leading-term ideal.
std::vector<std::size_t> maximal_independent_set(const Ideal& ideal);

/// I : q^infinity.
Ideal saturate(const Ideal& ideal, const RatPoly& q);

/// Same ideal, decided by comparing reduced bases.
bool same_ideal(const Ideal& a, const Ideal& b);

}  // namespace dtk
