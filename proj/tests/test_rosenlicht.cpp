#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "dtk/integrals.hpp"
#include "dtk/rosenlicht.hpp"
#include "support.hpp"

using namespace dtk;
using dtk::testing::P;
using dtk::testing::Q;
using dtk::testing::U;

namespace {

const Ring R1({"x"});

// Residues of 1/P at the given distinct rational roots, computed as 1/P'(x_i).
std::vector<Rat> residues_at(const UniPoly& p, const std::vector<Rat>& roots) {
  std::vector<Rat> out;
  for (const auto& r : roots) out.push_back(Rat(1) / p.derivative().evaluate(r));
  return out;
}

UniPoly from_roots(const std::vector<Rat>& roots) {
  UniPoly p = UniPoly::constant(1);
  for (const auto& r : roots) p = p * UniPoly({-r, Rat(1)});
  return p;
}

std::vector<Rat> roots_only(const std::vector<RationalRoot>& rs) {
  std::vector<Rat> out;
  for (const auto& r : rs)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.root);
  return out;
}

struct CorpusEntry {
  const char* field;
  bool orthogonal;
  // Hand-derived first integral on the square, as numerator / denominator in x_1, x_2.
  const char* num;
  const char* den;
};

const CorpusEntry corpus[] = {
    {"x^2*(x-1)", true, nullptr, nullptr},
    {"x", false, "x_1", "x_2"},
    {"x^2", false, "x_2 - x_1", "x_1*x_2"},
    {"x*(x-1)", false, "x_1*x_2 - x_2", "x_1*x_2 - x_1"},
    {"x^3 - 2", true, nullptr, nullptr},
};

}  // namespace

TEST_CASE("residue_polynomial examples") {
  SUBCASE("x(x-1)") {
    const UniPoly r = residue_polynomial(U("x*(x-1)"));
    CHECK(roots_only(rational_roots(r)) == std::vector<Rat>{-1, 1});
  }
  SUBCASE("x") {
    const UniPoly r = residue_polynomial(U("x"));
    CHECK(r.degree() == 1);
    CHECK(roots_only(rational_roots(r)) == std::vector<Rat>{1});
  }
  SUBCASE("x^3 - 2") {
    // Residues 1/(3 a^2) = a/6 for a^3 = 2, so they are the roots of 108 y^3 - 1.
    const UniPoly r = residue_polynomial(U("x^3 - 2"));
    CHECK(r == UniPoly({Rat(-1), 0, 0, Rat(108)}));
    CHECK(rational_roots(r).empty());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(residue_polynomial(U("x^2*(x-1)")), NotSquarefree);
    CHECK_THROWS_AS(residue_polynomial(U("3")), InvalidArgument);
  }
}

TEST_CASE("ratio_polynomial examples") {
  SUBCASE("roots -1, 1") {
    const UniPoly t = ratio_polynomial(U("x^2 - 1"));
    CHECK(t.degree() == 4);
    CHECK(rational_roots(t) == std::vector<RationalRoot>{{Rat(-1), 2}, {Rat(1), 2}});
  }
  SUBCASE("single root") {
    const UniPoly t = ratio_polynomial(U("5*x - 3"));
    CHECK(t == UniPoly({Rat(-1), Rat(1)}));
  }
  SUBCASE("cube roots") {
    const UniPoly t = ratio_polynomial(residue_polynomial(U("x^3 - 2")));
    CHECK(t.degree() == 9);
    // Ratios a/b of cube roots of 2 are cube roots of unity: z = 1 three times,
    // the other six are roots of (z^2 + z + 1)^3.
    CHECK(rational_roots(t) == std::vector<RationalRoot>{{Rat(1), 3}});
    const UniPoly w = U("x^2 + x + 1");
    CHECK(t == (U("(x - 1)^3") * w * w * w).primitive());
  }
  SUBCASE("repeated input uses the squarefree part") {
    CHECK(ratio_polynomial(U("(x-2)^2*(x+2)")) == ratio_polynomial(U("(x-2)*(x+2)")));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(ratio_polynomial(U("x*(x-1)")), ZeroRoot);
    CHECK_THROWS_AS(ratio_polynomial(UniPoly()), ZeroPolynomial);
  }
}

TEST_CASE("classify corpus") {
  struct Row {
    const char* p;
    bool orthogonal;
    RosenlichtReason reason;
  };
  const Row rows[] = {
      {"x^2*(x-1)", true, RosenlichtReason::MultipleAndSimpleRoot},
      {"x*(x-1)", false, RosenlichtReason::AllResidueRatiosRational},
      {"x^3 - 2", true, RosenlichtReason::IndependentResiduePair},
      {"x", false, RosenlichtReason::NoRootPair},
      {"x^2", false, RosenlichtReason::NoRootPair},
      {"0", false, RosenlichtReason::DegenerateField},
      {"7", false, RosenlichtReason::DegenerateField},
      {"(x-1)^2*(x+1)^3", false, RosenlichtReason::NoRootPair},
      {"x^3 - x", false, RosenlichtReason::AllResidueRatiosRational},
      {"x^2 - 2", false, RosenlichtReason::AllResidueRatiosRational},  // residues +-1/(2 sqrt 2)
      {"x^2 + 1", false, RosenlichtReason::AllResidueRatiosRational},
      {"x*(x^2 - 2)", false, RosenlichtReason::AllResidueRatiosRational},  // residues -1/2, 1/4, 1/4
      {"x^3 + x^2 + x", true, RosenlichtReason::IndependentResiduePair},  // residue 1 at 0, irrational at the others
  };
  for (const auto& row : rows) {
    CAPTURE(row.p);
    const auto v = classify(U(row.p));
    CHECK(v.orthogonal == row.orthogonal);
    CHECK(v.reason == row.reason);
  }
}

TEST_CASE("classify certificates") {
  const auto mixed = classify(U("x^2*(x-1)"));
  REQUIRE(mixed.certificate.factors.size() == 2);
  CHECK(mixed.certificate.factors[0].multiplicity == 1);
  CHECK(mixed.certificate.factors[1].multiplicity == 2);

  const auto simple = classify(U("x*(x-1)"));
  CHECK(simple.certificate.ratio.degree() == 4);
  CHECK(simple.certificate.rational_ratio_count == 4);

  const auto cubic = classify(U("x^3 - 2"));
  CHECK(cubic.certificate.ratio.degree() == 9);
  CHECK(cubic.certificate.rational_ratio_count == 3);
  CHECK(to_string(cubic.reason) == "IndependentResiduePair");

  CHECK_FALSE(classify(U("(x-1)^2*(x+1)^3")).certificate.note.empty());
}

TEST_CASE("property: residue polynomial against direct residues") {
  std::mt19937 rng(4711);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4), deg(2, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rat> roots;
    const int d = deg(rng);
    while (static_cast<int>(roots.size()) < d) {
      Rat r(num(rng), den(rng));
      r.canonicalize();
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    const UniPoly p = from_roots(roots) * Rat(num(rng) == 0 ? 1 : 3);
    CAPTURE(p.to_string());
    const UniPoly r = residue_polynomial(p);
    CHECK(r.degree() == d);
    // Every direct residue is a root, and residues sum to zero (y^{d-1} coefficient).
    auto expected = residues_at(p, roots);
    std::sort(expected.begin(), expected.end());
    CHECK(roots_only(rational_roots(r)) == expected);
    CHECK(r.coefficient(d - 1) == 0);
    // Rational residues mean every ratio is rational.
    const auto v = classify(p);
    CHECK_FALSE(v.orthogonal);
    CHECK(v.reason == RosenlichtReason::AllResidueRatiosRational);
    const UniPoly t = ratio_polynomial(r);
    CHECK(t.degree() == d * d);
    int one_mult = 0;
    for (const auto& rr : rational_roots(t))
      if (rr.root == 1) one_mult = rr.multiplicity;
    CHECK(one_mult >= d);
  }
}

TEST_CASE("property: orthogonality is invariant under scaling") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> small(-5, 5), deg(1, 5);
  int orthogonal_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    UniPoly p = dtk::testing::random_unipoly(rng, deg(rng), 3);
    Rat c(small(rng), 1 + std::abs(small(rng)));
    if (c == 0) c = Rat(-2, 3);
    c.canonicalize();
    const Rat s(small(rng) == 0 ? 5 : small(rng));
    if (s == 0) continue;
    CAPTURE(p.to_string());
    const auto a = classify(p);
    const auto b = classify(p.compose_scale(c) * s);
    CHECK(a.orthogonal == b.orthogonal);
    orthogonal_seen += a.orthogonal;
  }
  CHECK(orthogonal_seen > 5);
}

TEST_CASE("degenerate_locus_equations") {
  SUBCASE("cubic discriminant") {
    const auto loc = degenerate_locus_equations(3, 1, 2, Rat(1));
    const Ring& c = loc.coefficient_ring;
    // Classical discriminant of x^3 + a x^2 + b x + c; Res(P, P') = -disc for monic cubics.
    const RatPoly disc = P("a_1^2*a_2^2 - 4*a_2^3 - 4*a_1^3*a_3 - 27*a_3^2 + 18*a_1*a_2*a_3", c);
    CHECK(loc.discriminant == disc * Rat(-1));
    CHECK(loc.discriminant.evaluate(std::vector<Rat>{-1, 0, 0}) == 0);  // x^3 - x^2
    CHECK(loc.discriminant.evaluate(std::vector<Rat>{0, -1, 0}) != 0);  // x^3 - x
  }
  SUBCASE("residue relation at roots 0, 1, 2") {
    const auto loc = degenerate_locus_equations(3, 1, 2, Rat(1));
    CHECK(loc.residue_relation.evaluate(std::vector<Rat>{0, 1, 2}) != 0);
    // Residues there are 1/2, -1, 1/2: r_1 = -1/2 r_2 and r_1 = r_3.
    CHECK(degenerate_locus_equations(3, 1, 2, Q("-1/2")).residue_relation.evaluate(std::vector<Rat>{0, 1, 2}) == 0);
    CHECK(degenerate_locus_equations(3, 1, 3, Rat(1)).residue_relation.evaluate(std::vector<Rat>{0, 1, 2}) == 0);
  }
  SUBCASE("discriminant agrees with the numeric resultant") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int d = 3; d <= 5; ++d) {
      const auto loc = degenerate_locus_equations(d, 1, 2, Rat(1));
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rat> a(d);
        for (auto& v : a) v = coef(rng);
        std::vector<Rat> low_first(a.rbegin(), a.rend());
        low_first.push_back(1);
        const UniPoly p(low_first);
        CHECK(loc.discriminant.evaluate(a) == resultant(p, p.derivative()));
      }
    }
  }
  SUBCASE("relation vanishes exactly at the residue ratio") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> pick(-6, 6);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rat> roots;
      while (roots.size() < 4) {
        const Rat r(pick(rng));
        if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
      const auto res = residues_at(from_roots(roots), roots);
      const Rat q = res[0] / res[2];
      CHECK(degenerate_locus_equations(4, 1, 3, q).residue_relation.evaluate(roots) == 0);
      CHECK(degenerate_locus_equations(4, 1, 3, q + 1).residue_relation.evaluate(roots) != 0);
    }
  }
  SUBCASE("bad indices") {
    CHECK_THROWS_AS(degenerate_locus_equations(2, 1, 2, Rat(1)), BadIndices);
    CHECK_THROWS_AS(degenerate_locus_equations(3, 1, 1, Rat(1)), BadIndices);
    CHECK_THROWS_AS(degenerate_locus_equations(3, 0, 2, Rat(1)), BadIndices);
    CHECK_THROWS_AS(degenerate_locus_equations(3, 1, 4, Rat(1)), BadIndices);
  }
}

TEST_CASE("consistency with the bounded integral search") {
  for (const auto& entry : corpus) {
    CAPTURE(entry.field);
    const UniPoly p = U(entry.field);
    const auto verdict = classify(p);
    CHECK(verdict.orthogonal == entry.orthogonal);
    const DVariety line = DVariety::affine(R1, {P(entry.field, R1)});
    const auto report = property_O_bounded(line, 2, 4);
    if (verdict.orthogonal) {
      CHECK(report.witnesses.empty());
      continue;
    }
    const DVariety square = product(line, 2);
    const Ring& ring = square.ring();
    const RatFunction catalogued(P(entry.num, ring), P(entry.den, ring));
    CHECK(is_first_integral(square, catalogued));
    CHECK_FALSE(is_constant_on(square, catalogued));
    REQUIRE_FALSE(report.witnesses.empty());
    CHECK(report.verdict == Verdict::Fails);
    for (const auto& w : report.witnesses) {
      const DVariety power = product(line, w.power);
      CHECK(is_first_integral(power, w.function));
    }
  }
}
