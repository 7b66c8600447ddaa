#pragma once

// Trivialized families of D-varieties over an affine parameter space. The
// parameters are constants of the derivation, so the field only has fiber
// components.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtk/dvariety.hpp"
#include "dtk/integrals.hpp"

namespace dtk {

class DFamily {
 public:
  /// `ring` lists the parameters first, then the fiber coordinates. The field
  /// has one component per fiber coordinate. Throws NotInvariant unless
  /// `fiber_variety` is invariant for the total-space derivation.
  DFamily(Ring ring, std::size_t parameters, std::vector<RatPoly> field, Ideal fiber_variety);
  /// Same with fiber_variety = <0>.
  DFamily(Ring ring, std::size_t parameters, std::vector<RatPoly> field);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t parameter_count() const noexcept { return params_; }
  std::size_t fiber_dimension() const noexcept { return ring_.size() - params_; }
  std::vector<std::string> parameter_names() const;
  std::vector<std::string> fiber_names() const;
  const std::vector<RatPoly>& field() const noexcept { return field_; }
  const Ideal& fiber_variety() const noexcept { return variety_; }

  /// The total space as a D-variety on the joint ring, with zero derivation
  /// on the parameters.
  const DVariety& total_space() const noexcept { return total_; }

 private:
  Ring ring_;
  std::size_t params_;
  std::vector<RatPoly> field_;
  Ideal variety_;
  DVariety total_;
};

/// v_d = sum_i (sum_m a_{i,m} m) d/dx_i over all monomials m of degree <= d.
/// Component i uses the letter 'a' + i (a, b, c, ...) followed by the exponent
/// vector, e.g. a_0, a_1 for n = 1 or a_1_0 for n = 2. Fiber coordinates are
/// x, y, z for n <= 3 and x_1..x_n beyond. n * C(n+d, d) parameters in all.
DFamily universal_field(int n, int d);

/// The fiber over a rational parameter point, on the fiber coordinates.
/// Throws MissingParameter, or InvalidArgument for a name that is not a parameter.
DVariety specialize(const DFamily& f, const std::map<std::string, Rat>& point);

struct InitialTerm {
  int order = 0;
  RatPoly term;
  bool operator==(const InitialTerm&) const = default;
};

/// g = t^order * term with term not divisible by t. Throws ZeroPolynomial.
InitialTerm initial_term(const RatPoly& g, std::size_t t);
InitialTerm initial_term(const RatPoly& g, const std::string& t);

/// t-adic expansion g = c_0 + c_1 t + ... of a first integral along the fiber
/// t = 0 of a one-parameter family. When the t^k layer of g (modulo the fiber
/// variety) is not constant, expansion stops with `obstruction = k`; that
/// layer restricted to t = 0 is a nonconstant integral of the special fiber.
struct FiberExpansion {
  std::vector<Rat> coefficients;   // c_0..c_{N-1}, or up to the obstruction
  std::optional<int> obstruction;  // first order k whose layer is nonconstant
  RatPoly obstruction_layer;       // that layer, when present
};

/// Throws NotAnIntegral when the family derivation does not kill g modulo the
/// fiber variety, and InvalidArgument unless the family has one parameter and
/// its fiber variety does not involve it.
FiberExpansion fiber_expansion(const DFamily& f, const RatPoly& g, int order);

struct SpecializationReport {
  int degree_bound = 0;
  Rat fiber_point;
  /// An integral of the total space functionally independent of the parameter.
  std::optional<RatFunction> total_integral;
  std::optional<RatFunction> fiber_integral;
  bool total_complete = true;  // Darboux coverage at this bound
  bool fiber_complete = true;
  /// Desk-scale instance of "generic fiber integral => special fiber integral":
  /// false only when a total-space integral was found and the fiber search
  /// found none.
  bool holds() const noexcept { return !total_integral || fiber_integral.has_value(); }
  bool vacuous() const noexcept { return !total_integral; }
};

SpecializationReport specialization_check(const DFamily& f, const Rat& fiber_point, int max_degree,
                                          const SearchOptions& opts = {});

/// Rank of the Jacobian matrix of fs over the rational function field. All fs
/// must share a ring (RingMismatch otherwise); an empty list has rank 0.
std::size_t jacobian_rank(const std::vector<RatFunction>& fs);

}  // namespace dtk
