#pragma once

// Exact classification of one-dimensional fields P(x) d/dx: orthogonality to
// the constants is decided from the root multiplicities of P and, when all
// roots are simple, from the residues of 1/P.

#include <string>
#include <vector>

#include "dtk/unipoly.hpp"

namespace dtk {

/// R(y) = Res_x(P, y P' - 1), primitive with positive leading coefficient. Its
/// roots are the residues 1/P'(x_i) of 1/P. Throws NotSquarefree, and
/// InvalidArgument when deg P < 1.
UniPoly residue_polynomial(const UniPoly& p);

/// T(z) = Res_y(R(y), R(z y)), primitive. Its roots are the ratios r_i / r_j of
/// roots of R, so deg T = m^2 for m distinct roots. A repeated R is replaced by
/// its squarefree part. Throws ZeroRoot when R(0) = 0.
UniPoly ratio_polynomial(const UniPoly& r);

enum class RosenlichtReason {
  MultipleAndSimpleRoot,
  IndependentResiduePair,
  AllResidueRatiosRational,
  NoRootPair,
  DegenerateField,
};
std::string to_string(RosenlichtReason r);

struct RosenlichtCertificate {
  std::vector<SquarefreeFactor> factors;  // empty for degenerate fields
  UniPoly residue;                        // set when every root is simple and deg P >= 2
  UniPoly ratio;
  std::vector<RationalRoot> rational_ratios;
  int rational_ratio_count = 0;  // rational roots of ratio, with multiplicity
  std::string note;
};

struct RosenlichtVerdict {
  bool orthogonal = false;
  RosenlichtReason reason = RosenlichtReason::DegenerateField;
  RosenlichtCertificate certificate;
};

/// Decides whether the generic type of (A^1, P d/dx) is orthogonal to the
/// constants. Accepts every P, including 0 and constants.
RosenlichtVerdict classify(const UniPoly& p);

struct DegenerateLocus {
  Ring coefficient_ring;  // a_1..a_d for P = x^d + a_1 x^{d-1} + ... + a_d
  RatPoly discriminant;   // Res(P, P')
  Ring root_ring;         // x_1..x_d
  RatPoly residue_relation;
};

/// Equations of the exceptional loci in the space of monic degree-d fields:
/// the discriminant Res(P, P'), and in root coordinates the relation
/// prod_{k != j}(x_j - x_k) - q prod_{k != i}(x_i - x_k), which vanishes
/// exactly when res_{x_i}(1/P) = q res_{x_j}(1/P). Indices are 1-based.
/// Throws BadIndices unless d >= 3 and i != j lie in 1..d.
DegenerateLocus degenerate_locus_equations(int d, int i, int j, const Rat& q);

}  // namespace dtk
