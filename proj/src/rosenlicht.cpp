#include "dtk/rosenlicht.hpp"

#include "dtk/errors.hpp"
#include "dtk/linalg.hpp"

namespace dtk {

UniPoly residue_polynomial(const UniPoly& p) {
  if (p.degree() < 1) throw InvalidArgument("residue_polynomial: degree must be at least 1");
  const UniPoly dp = p.derivative();
  if (gcd(p, dp).degree() > 0) throw NotSquarefree("residue_polynomial: P has a repeated root");
  const Ring ring({"x", "y"});
  const RatPoly y = RatPoly::variable(ring, 1);
  return resultant_x(p.to_poly(ring, 0), y * dp.to_poly(ring, 0) - RatPoly(ring, Rat(1)), 0, 1).primitive();
}

UniPoly ratio_polynomial(const UniPoly& r) {
  if (r.is_zero()) throw ZeroPolynomial("ratio_polynomial of the zero polynomial");
  if (r.coefficient(0) == 0) throw ZeroRoot("ratio_polynomial: R vanishes at 0");
  const UniPoly s = squarefree_part(r);
  if (s.degree() < 1) throw InvalidArgument("ratio_polynomial: R must have a root");
  const Ring ring({"y", "z"});
  RatPoly a(ring), b(ring);
  for (int k = 0; k <= s.degree(); ++k) {
    const Rat& c = s.coefficient(k);
    if (c == 0) continue;
    a.add_term(Monomial(std::vector<int>{k, 0}), c);
    b.add_term(Monomial(std::vector<int>{k, k}), c);
  }
  return resultant_x(a, b, 0, 1).primitive();
}

std::string to_string(RosenlichtReason r) {
  switch (r) {
    case RosenlichtReason::MultipleAndSimpleRoot: return "MultipleAndSimpleRoot";
    case RosenlichtReason::IndependentResiduePair: return "IndependentResiduePair";
    case RosenlichtReason::AllResidueRatiosRational: return "AllResidueRatiosRational";
    case RosenlichtReason::NoRootPair: return "NoRootPair";
    case RosenlichtReason::DegenerateField: return "DegenerateField";
  }
  return "?";
}

RosenlichtVerdict classify(const UniPoly& p) {
  RosenlichtVerdict v;
  if (p.degree() <= 0) {
    v.certificate.note = "constant field";
    return v;
  }
  auto& cert = v.certificate;
  cert.factors = squarefree_split(p);
  bool has_simple = false, has_multiple = false;
  for (const auto& f : cert.factors) {
    if (f.factor.degree() < 1) continue;
    (f.multiplicity == 1 ? has_simple : has_multiple) = true;
  }
  if (has_simple && has_multiple) {
    v.orthogonal = true;
    v.reason = RosenlichtReason::MultipleAndSimpleRoot;
    return v;
  }
  if (has_multiple) {
    v.reason = RosenlichtReason::NoRootPair;
    const int distinct = squarefree_part(p).degree();
    cert.note = distinct == 1 ? "single multiple root"
                              : "only multiple roots: neither case of the criterion applies";
    return v;
  }
  if (p.degree() == 1) {
    v.reason = RosenlichtReason::NoRootPair;
    cert.note = "single simple root";
    return v;
  }
  cert.residue = residue_polynomial(p);
  cert.ratio = ratio_polynomial(cert.residue);
  cert.rational_ratios = rational_roots(cert.ratio);
  for (const auto& r : cert.rational_ratios) cert.rational_ratio_count += r.multiplicity;
  if (cert.rational_ratio_count == cert.ratio.degree()) {
    v.reason = RosenlichtReason::AllResidueRatiosRational;
  } else {
    v.orthogonal = true;
    v.reason = RosenlichtReason::IndependentResiduePair;
  }
  return v;
}

namespace {

std::vector<std::string> indexed(const std::string& base, int d) {
  std::vector<std::string> names;
  for (int k = 1; k <= d; ++k) names.push_back(base + "_" + std::to_string(k));
  return names;
}

// Sylvester matrix with polynomial coefficients, leading coefficient first,
// laid out as in the numeric resultant.
RatPoly poly_resultant(const std::vector<RatPoly>& a, const std::vector<RatPoly>& b, const Ring& ring) {
  const std::size_t da = a.size() - 1, db = b.size() - 1, n = da + db;
  PolyMatrix m(n, std::vector<RatPoly>(n, RatPoly(ring)));
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t k = 0; k <= da; ++k) m[r][r + k] = a[k];
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t k = 0; k <= db; ++k) m[db + r][r + k] = b[k];
  return determinant(std::move(m), ring);
}

}  // namespace

DegenerateLocus degenerate_locus_equations(int d, int i, int j, const Rat& q) {
  if (d < 3) throw BadIndices("degenerate_locus_equations: degree must be at least 3");
  if (i < 1 || j < 1 || i > d || j > d || i == j)
    throw BadIndices("degenerate_locus_equations: need distinct indices in 1.." + std::to_string(d));
  const Ring coeffs(indexed("a", d));
  // P = x^d + a_1 x^{d-1} + ... + a_d, leading coefficient first.
  std::vector<RatPoly> pc{RatPoly(coeffs, Rat(1))}, dpc;
  for (int k = 1; k <= d; ++k) pc.push_back(RatPoly::variable(coeffs, k - 1));
  for (int k = 0; k < d; ++k) dpc.push_back(pc[k] * Rat(d - k));
  const Ring roots(indexed("x", d));
  auto vandermonde_row = [&](int t) {
    RatPoly prod(roots, Rat(1));
    for (int k = 1; k <= d; ++k)
      if (k != t) prod = prod * (RatPoly::variable(roots, t - 1) - RatPoly::variable(roots, k - 1));
    return prod;
  };
  return {coeffs, poly_resultant(pc, dpc, coeffs), roots, vandermonde_row(j) - vandermonde_row(i) * q};
}

}  // namespace dtk
