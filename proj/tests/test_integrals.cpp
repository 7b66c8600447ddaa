#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "dtk/integrals.hpp"
#include "support.hpp"

using namespace dtk;
using dtk::testing::P;

namespace {

const Ring R1({"x"});
const Ring R2({"x", "y"});

DVariety affine2(const std::string& fx, const std::string& fy) { return DVariety::affine(R2, {P(fx, R2), P(fy, R2)}); }
DVariety line(const std::string& f) { return DVariety::affine(R1, {P(f, R1)}); }

bool has_poly(const std::vector<DarbouxElement>& els, const RatPoly& p) {
  for (const auto& e : els)
    if (e.poly == p.monic()) return true;
  return false;
}

// --- Oracle: dense kernel of f -> v(f) on all monomials of degree <= D in
// two variables, built from exponent arithmetic without RatPoly derivation.
using Exps = std::pair<int, int>;

std::map<Exps, Rat> as_map(const RatPoly& p) {
  std::map<Exps, Rat> out;
  for (const auto& [m, c] : p.terms()) out[{m[0], m.size() > 1 ? m[1] : 0}] = c;
  return out;
}

std::size_t oracle_kernel_dim(const std::vector<RatPoly>& field, int D, std::vector<std::vector<Rat>>* image_rows,
                              std::vector<Exps>* cols) {
  const auto f1 = as_map(field[0]);
  const auto f2 = as_map(field[1]);
  std::vector<Exps> monos;
  for (int d = 0; d <= D; ++d)
    for (int a = d; a >= 0; --a) monos.push_back({a, d - a});
  std::map<Exps, std::size_t> row_index;
  std::vector<std::map<Exps, Rat>> images;
  for (const auto& [a, b] : monos) {
    std::map<Exps, Rat> img;
    if (a > 0)
      for (const auto& [e, c] : f1) img[{e.first + a - 1, e.second + b}] += c * a;
    if (b > 0)
      for (const auto& [e, c] : f2) img[{e.first + a, e.second + b - 1}] += c * b;
    for (const auto& [e, c] : img) row_index.try_emplace(e, row_index.size());
    images.push_back(std::move(img));
  }
  std::vector<std::vector<Rat>> m(row_index.size(), std::vector<Rat>(monos.size()));
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (const auto& [e, c] : images[j]) m[row_index.at(e)][j] = c;
  if (image_rows) *image_rows = m;
  if (cols) *cols = monos;
  // Plain Gaussian elimination for the rank.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < monos.size() && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rat f = m[r][col] / m[rank][col];
      for (std::size_t c = 0; c < monos.size(); ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return monos.size() - rank;
}

}  // namespace

TEST_CASE("standard monomials") {
  CHECK(standard_monomials(Ideal::zero(R2), 1).size() == 3);
  const Ideal parabola(R2, {P("y - x^2", R2)});
  // grevlex leading term of y - x^2 is x^2, so x^k for k >= 2 drop out.
  const auto s = standard_monomials(parabola, 2);
  CHECK(s == std::vector<Monomial>{Monomial({1, 1}), Monomial({0, 2}), Monomial({1, 0}), Monomial({0, 1}),
                                   Monomial({0, 0})});
}

TEST_CASE("polynomial_integrals examples") {
  const auto rot = polynomial_integrals(affine2("-y", "x"), 2);
  REQUIRE(rot.size() == 1);
  CHECK(rot[0] == P("x^2 + y^2", R2));
  CHECK(polynomial_integrals(affine2("x", "y"), 3).empty());
  const auto zero = polynomial_integrals(affine2("0", "0"), 1);
  REQUIRE(zero.size() == 2);
  CHECK(zero[0] == P("x", R2));
  CHECK(zero[1] == P("y", R2));
  CHECK_THROWS_AS(polynomial_integrals(affine2("x", "y"), 0), InvalidArgument);
  SearchOptions tiny;
  tiny.max_unknowns = 3;
  CHECK_THROWS_AS(polynomial_integrals(affine2("x", "y"), 3, tiny), ResourceLimit);
}

TEST_CASE("polynomial_integrals on a variety works modulo the ideal") {
  // On the parabola y = x^2 with v = (1, 2x), y - x^2 vanishes and is not reported.
  const DVariety par(R2, Ideal(R2, {P("y - x^2", R2)}), {P("1", R2), P("2*x", R2)});
  CHECK(polynomial_integrals(par, 3).empty());
  // A cylinder-like example: v = (0, 1) on V(x^2 - 1) has integral x.
  const DVariety two_lines(R2, Ideal(R2, {P("x^2 - 1", R2)}), {P("0", R2), P("1", R2)});
  const auto ints = polynomial_integrals(two_lines, 2);
  REQUIRE(ints.size() == 1);
  CHECK(ints[0] == P("x", R2));
}

TEST_CASE("property: polynomial_integrals matches the dense oracle") {
  std::mt19937 rng(21);
  int trials = 0;
  for (int d = 0; d <= 2; ++d) {
    for (int D = 1; D <= 3; ++D) {
      for (int rep = 0; rep < 6; ++rep) {
        std::vector<RatPoly> field{dtk::testing::random_poly(rng, R2, d, 3), dtk::testing::random_poly(rng, R2, d, 3)};
        if (rep == 0) field[1] = RatPoly(R2);  // exercise degenerate fields too
        const auto x = DVariety::affine(R2, field);
        std::vector<std::vector<Rat>> rows;
        std::vector<Exps> cols;
        const std::size_t dim = oracle_kernel_dim(field, D, &rows, &cols);
        const auto got = polynomial_integrals(x, D);
        CHECK(got.size() + 1 == dim);
        for (const auto& f : got) {
          std::vector<Rat> v(cols.size());
          for (std::size_t j = 0; j < cols.size(); ++j)
            v[j] = f.coefficient(Monomial(std::vector<int>{cols[j].first, cols[j].second}));
          for (const auto& row : rows) {
            Rat acc = 0;
            for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
            CHECK(acc == 0);
          }
        }
        ++trials;
      }
    }
  }
  CHECK(trials == 54);
}

TEST_CASE("darboux_polynomials examples") {
  const auto euler = darboux_polynomials(affine2("x", "y"), 1);
  REQUIRE(euler.size() == 2);
  CHECK(euler[0] == DarbouxElement{P("x", R2), P("1", R2)});
  CHECK(euler[1] == DarbouxElement{P("y", R2), P("1", R2)});

  const auto par = darboux_polynomials(affine2("1", "2*x"), 2);
  CHECK(has_poly(par, P("y - x^2", R2)));
  const auto rot = darboux_polynomials(affine2("-y", "x"), 2);
  CHECK(has_poly(rot, P("x^2 + y^2", R2)));
  // Rotation has no rational invariant lines.
  for (const auto& e : rot) CHECK(e.poly.total_degree() == 2);

  // A nonlinear field: v = x^2 d/dx on the line.
  const auto sq = darboux_polynomials(line("x^2"), 2);
  CHECK(has_poly(sq, P("x", R1)));
  CHECK(has_poly(sq, P("x^2", R1)));
}

TEST_CASE("darboux elements satisfy their defining identity") {
  std::vector<DVariety> fields{affine2("x", "y"), affine2("-y", "x"), affine2("x^2", "y^2"), affine2("1", "2*x"),
                               affine2("x*y", "y^2 - x"), product(line("x*(x-1)"), 2)};
  for (const auto& x : fields) {
    for (const auto& e : darboux_polynomials(x, 2)) {
      CHECK(normal_form(derive(x, e.poly) - e.cofactor * e.poly, x.variety()).is_zero());
      CHECK(e.cofactor.total_degree() <= std::max(x.field_degree() - 1, 0));
      CHECK(e.poly.leading_coefficient() == 1);
    }
  }
}

TEST_CASE("darboux search on a variety") {
  const DVariety par(R2, Ideal(R2, {P("y - x^2", R2)}), {P("x", R2), P("2*y", R2)});
  const auto els = darboux_polynomials(par, 2);
  CHECK(has_poly(els, P("x", R2)));
  for (const auto& e : els) CHECK(normal_form(derive(par, e.poly) - e.cofactor * e.poly, par.variety()).is_zero());
}

TEST_CASE("partial coverage is recorded, not hidden") {
  SearchOptions tiny;
  tiny.max_unknowns = 4;
  const auto x = product(line("x^2"), 2);
  const auto search = darboux_search(x, 2, tiny);
  CHECK_FALSE(search.complete());
  CHECK_THROWS_AS(darboux_polynomials(x, 2, tiny), ResourceLimit);
  const auto report = property_O_bounded(line("x^2"), 2, 2, tiny);
  CHECK_FALSE(report.searched[1].complete);
  CHECK_FALSE(report.searched[1].note.empty());
}

TEST_CASE("assemble_rational_integrals examples") {
  const auto euler = affine2("x", "y");
  const auto ints = assemble_rational_integrals(euler, darboux_polynomials(euler, 1));
  REQUIRE(ints.size() == 1);
  CHECK(ints[0] == RatFunction(P("x", R2), P("y", R2)));

  const auto rot = affine2("-y", "x");
  const auto single = assemble_rational_integrals(rot, {{P("x^2 + y^2", R2), RatPoly(R2)}});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == RatFunction(P("x^2 + y^2", R2)));

  const auto indep = affine2("x", "2*y");
  CHECK(assemble_rational_integrals(affine2("x", "x*y"), {{P("x", R2), P("1", R2)}, {P("y", R2), P("x", R2)}}).empty());
  const auto two = assemble_rational_integrals(indep, darboux_polynomials(indep, 1));
  REQUIRE(two.size() == 1);
  CHECK(two[0] == RatFunction(P("x^2", R2), P("y", R2)));
  CHECK(assemble_rational_integrals(euler, {}).empty());
}

TEST_CASE("property_O_bounded examples") {
  SUBCASE("x d/dx") {
    const auto rep = property_O_bounded(line("x"), 2, 1);
    CHECK(rep.verdict == Verdict::Fails);
    REQUIRE(rep.witnesses.size() == 1);
    CHECK(rep.witnesses[0].power == 2);
    const auto x2 = product(line("x"), 2);
    CHECK(rep.witnesses[0].function == RatFunction(P("x_1", x2.ring()), P("x_2", x2.ring())));
    CHECK(rep.searched.size() == 2);
  }
  SUBCASE("x^2 (x - 1) d/dx is orthogonal") {
    const auto rep = property_O_bounded(line("x^2*(x-1)"), 2, 4);
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK(rep.witnesses.empty());
    CHECK(rep.max_power == 2);
    CHECK(rep.max_degree == 4);
    for (const auto& c : rep.searched) CHECK(c.complete);
  }
  SUBCASE("x^2 d/dx") {
    const auto rep = property_O_bounded(line("x^2"), 2, 2);
    CHECK(rep.verdict == Verdict::Fails);
    const auto x2 = product(line("x^2"), 2);
    for (const auto& w : rep.witnesses) {
      CHECK(derive_rational(x2, w.function).numerator().is_zero());
      CHECK_FALSE(is_constant_on(x2, w.function));
    }
    // The hand-derived (x_1 - x_2)/(x_1 x_2) verifies too.
    CHECK(is_first_integral(x2, RatFunction(P("x_1 - x_2", x2.ring()), P("x_1*x_2", x2.ring()))));
  }
  CHECK_THROWS_AS(property_O_bounded(line("x"), 0, 1), InvalidArgument);
}

TEST_CASE("property: witnesses verify, are nonconstant, and invert") {
  for (const char* f : {"x", "x^2", "x*(x-1)", "x^2 - 1", "2*x"}) {
    const auto base = line(f);
    const auto rep = property_O_bounded(base, 2, 2);
    for (const auto& w : rep.witnesses) {
      const auto xn = product(base, w.power);
      CHECK(is_first_integral(xn, w.function));
      CHECK(is_first_integral_via_graph(xn, w.function));
      CHECK_FALSE(is_constant_on(xn, w.function));
      CHECK(is_first_integral(xn, w.function.inverse()));
      CHECK(is_invariant(xn, indeterminacy_locus(xn, w.function)));
    }
  }
}

TEST_CASE("property: scaling the field leaves integrals unchanged") {
  for (const char* f : {"x", "x^2", "x*(x-1)", "x^2*(x-1)"}) {
    const auto base = line(f);
    const auto scaled = DVariety::affine(R1, {base.field()[0] * Rat(-3, 7)});
    const auto a = property_O_bounded(base, 2, 2);
    const auto b = property_O_bounded(scaled, 2, 2);
    CHECK(a.verdict == b.verdict);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
      CHECK(a.witnesses[i].function.to_string() == b.witnesses[i].function.to_string());
    }
  }
}

TEST_CASE("serial and parallel sweeps agree exactly") {
  SearchOptions serial;
  serial.execution = Execution::Serial;
  SearchOptions parallel;
  parallel.execution = Execution::Parallel;
  for (const char* f : {"x*(x-1)", "x^3 - 2"}) {
    const auto xn = product(line(f), 2);
    const auto a = darboux_search(xn, 3, serial);
    const auto b = darboux_search(xn, 3, parallel);
    CHECK(a.elements == b.elements);
    CHECK(polynomial_integrals(xn, 3, serial) == polynomial_integrals(xn, 3, parallel));
    const auto ra = property_O_bounded(line(f), 2, 3, serial);
    const auto rb = property_O_bounded(line(f), 2, 3, parallel);
    REQUIRE(ra.witnesses.size() == rb.witnesses.size());
    for (std::size_t i = 0; i < ra.witnesses.size(); ++i) CHECK(ra.witnesses[i].function == rb.witnesses[i].function);
  }
}
