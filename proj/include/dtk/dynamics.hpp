#pragma once

// Desk-scale topological dynamics. Linear torus flows and circle rotations are
// handled exactly; orbits of algebraic fields are integrated numerically and
// probed for invariant subvarieties and low-degree relations.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtk/dvariety.hpp"
#include "dtk/linalg.hpp"
#include "dtk/parallel.hpp"

namespace dtk {

// ---------------------------------------------------------------------------
// Linear flows on tori

/// Frequencies written over symbols assumed Q-linearly independent, e.g.
/// basis {"1", "sqrt2"}. coords has one row per symbol, one column per torus
/// coordinate.
class FreqVector {
 public:
  /// Throws InvalidArgument on an empty basis, zero columns or a shape mismatch.
  FreqVector(std::vector<std::string> basis, RatMatrix coords);
  /// Frequencies that are plain rationals, over the single symbol "1".
  static FreqVector rational(const std::vector<Rat>& w);

  const std::vector<std::string>& basis() const noexcept { return basis_; }
  const RatMatrix& coords() const noexcept { return coords_; }
  std::size_t dimension() const noexcept { return coords_.cols(); }

 private:
  std::vector<std::string> basis_;
  RatMatrix coords_;
};

struct TorusVerdict {
  bool holds = false;
  /// Nonzero integer m with sum m_i w_i = 0, when `holds` is false.
  std::vector<Integer> relation;
};

/// Transitive iff the frequencies are Z-independent.
TorusVerdict torus_is_transitive(const FreqVector& w);
/// Transitivity of the doubled flow (w, w); never holds for a linear flow.
TorusVerdict torus_is_weakly_mixing(const FreqVector& w);

// ---------------------------------------------------------------------------
// Circle rotations, angles in rational turns

/// Finite union of open arcs of R / period Z. Stored as sorted disjoint open
/// intervals of (0, period) together with whether the point 0 is covered; an
/// arc through 0 appears as (a, period) and (0, b) with `covers_zero` set.
class CircleArcSet {
 public:
  explicit CircleArcSet(Rat period = 1);
  /// Union of the given open arcs. Each (lo, hi) needs lo < hi and may wrap
  /// (any real lo, hi - lo may reach or exceed the period).
  CircleArcSet(Rat period, const std::vector<std::pair<Rat, Rat>>& arcs);
  static CircleArcSet whole(Rat period = 1);

  const Rat& period() const noexcept { return period_; }
  const std::vector<std::pair<Rat, Rat>>& intervals() const noexcept { return intervals_; }
  bool covers_zero() const noexcept { return zero_; }
  bool empty() const noexcept { return intervals_.empty() && !zero_; }
  bool is_whole() const;
  bool contains(const Rat& t) const;
  /// Maximal open arcs, wrapping ones glued across 0 (hi may exceed the period).
  std::vector<std::pair<Rat, Rat>> arcs() const;

  CircleArcSet unite(const CircleArcSet& o) const;
  CircleArcSet intersect(const CircleArcSet& o) const;
  /// The image under t -> -t.
  CircleArcSet reflect() const;
  bool subset_of(const CircleArcSet& o) const;
  bool operator==(const CircleArcSet&) const = default;

  std::string to_string() const;

 private:
  void add(Rat lo, Rat hi);
  void normalize();
  Rat period_;
  std::vector<std::pair<Rat, Rat>> intervals_;
  bool zero_ = false;
};

/// N(U, V) = {t : (U + t) meets V} for the unit-speed rotation. Throws
/// EmptyInput for an empty U or V, InvalidArgument on differing periods.
CircleArcSet circle_NUV(const CircleArcSet& u, const CircleArcSet& v);

struct WeakMixingRefutation {
  CircleArcSet u1, v1, u2, v2;
  CircleArcSet n1, n2;  // N(U1, V1) and N(U2, V2), disjoint
};

/// The inputs as a witness when N(U1, V1) and N(U2, V2) are disjoint.
std::optional<WeakMixingRefutation> circle_weak_mixing_refutation(const CircleArcSet& u1, const CircleArcSet& v1,
                                                                  const CircleArcSet& u2, const CircleArcSet& v2);

// ---------------------------------------------------------------------------
// Numeric orbits

/// A polynomial field with double coefficients, for fast repeated evaluation.
class NumericField {
 public:
  explicit NumericField(const std::vector<RatPoly>& components);
  std::size_t dimension() const noexcept { return dim_; }
  void evaluate(const double* x, double* out) const;

 private:
  struct Term {
    std::vector<int> exps;
    double coeff;
  };
  std::size_t dim_;
  std::vector<std::vector<Term>> comps_;
};

struct OrbitSample {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  double step = 0;
  std::string method = "rk4";
};

/// Coordinates beyond this magnitude raise NumericOverflow.
inline constexpr double kOverflowBound = 1e12;
/// Default pass threshold for invariance drift per unit time at step 1e-3.
inline constexpr double kDriftPerUnitTime = 1e-6;

/// Classical fixed-step RK4 in double precision, recording n_steps + 1 points.
/// x0 must satisfy the variety equations to within 1e-12 (InvalidArgument).
/// Throws NumericOverflow past kOverflowBound or on a non-finite value.
OrbitSample integrate_orbit(const DVariety& x, const std::vector<Rat>& x0, double step, int n_steps);
/// Independent orbits from several starting points.
std::vector<OrbitSample> integrate_orbits(const DVariety& x, const std::vector<std::vector<Rat>>& starts, double step,
                                          int n_steps, Execution exec = Execution::Parallel);

/// Largest |g(p)| over the generators g of z and the sample points p.
double invariance_drift(const OrbitSample& sample, const Ideal& z, Execution exec = Execution::Parallel);

/// Row i holds every monomial of degree <= D (graded-lex descending) at point i.
std::vector<std::vector<double>> evaluation_matrix(const std::vector<std::vector<double>>& points, int max_degree,
                                                   Execution exec = Execution::Parallel);

struct DensityResult {
  bool dense = false;  // DenseUpTo(D)
  int degree = 0;
  double sigma_min = 0;
  /// When a relation is found: coefficients on `monomials`, scaled so the
  /// largest magnitude is 1 and the leading nonzero one is positive.
  std::vector<Monomial> monomials;
  std::vector<double> relation;
  double residual = 0;  // max |relation(p)| over the sample
  std::string relation_text(const std::vector<std::string>& names) const;
};

/// Smallest singular value of the column-normalized evaluation matrix; dense
/// up to D when it exceeds the tolerance. Throws InsufficientSamples with
/// fewer than twice as many points as monomials.
DensityResult zariski_density_up_to_degree(const OrbitSample& sample, int max_degree, double tolerance = 1e-8,
                                           Execution exec = Execution::Parallel);

/// CSV with header t,x1,...,xn and 17 significant digits.
void write_orbit_csv(std::ostream& os, const OrbitSample& sample);
/// Throws SyntaxError on malformed input and InvalidArgument unless times
/// strictly increase.
OrbitSample read_orbit_csv(std::istream& is);

}  // namespace dtk
