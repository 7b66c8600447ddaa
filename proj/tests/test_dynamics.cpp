#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "dtk/dynamics.hpp"
#include "support.hpp"

using namespace dtk;
using dtk::testing::P;
using dtk::testing::Q;

namespace {

const Ring R1({"x"});
const Ring R2({"x", "y"});

DVariety rotation() { return DVariety::affine(R2, {P("-y", R2), P("x", R2)}); }

FreqVector freq(const std::vector<std::string>& basis, const std::vector<std::vector<int>>& rows) {
  RatMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return FreqVector(basis, m);
}

CircleArcSet arc(const char* lo, const char* hi, const char* period = "1") {
  return CircleArcSet(Q(period), {{Q(lo), Q(hi)}});
}

// Direct test of t in N(U, V): some lift of (u1 + t, u2 + t) overlaps some lift of (v1, v2).
bool shift_meets(const CircleArcSet& u, const CircleArcSet& v, const Rat& t) {
  const Rat p = u.period();
  for (const auto& [u1, u2] : u.arcs())
    for (const auto& [v1, v2] : v.arcs())
      for (int k = -3; k <= 3; ++k) {
        const Rat lo = std::max(Rat(u1 + t), Rat(v1 + k * p));
        const Rat hi = std::min(Rat(u2 + t), Rat(v2 + k * p));
        if (lo < hi) return true;
      }
  return false;
}

CircleArcSet random_arcs(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 3), pos(0, 23), len(1, 8);
  std::vector<std::pair<Rat, Rat>> arcs;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const Rat lo(pos(rng), 24);
    arcs.emplace_back(lo, lo + Rat(len(rng), 24));
  }
  return CircleArcSet(Rat(1), arcs);
}

}  // namespace

TEST_CASE("torus transitivity") {
  SUBCASE("examples") {
    CHECK(torus_is_transitive(freq({"1", "sqrt2"}, {{1, 0}, {0, 1}})).holds);
    const auto v = torus_is_transitive(FreqVector::rational({Rat(1), Rat(2)}));
    CHECK_FALSE(v.holds);
    CHECK(v.relation == std::vector<Integer>{2, -1});
    CHECK(torus_is_transitive(freq({"sqrt2"}, {{1}})).holds);
    CHECK_FALSE(torus_is_transitive(freq({"sqrt2"}, {{0}})).holds);
  }
  SUBCASE("invalid") {
    CHECK_THROWS_AS(FreqVector({}, RatMatrix(0, 1)), InvalidArgument);
    CHECK_THROWS_AS(FreqVector({"1"}, RatMatrix(1, 0)), InvalidArgument);
    CHECK_THROWS_AS(FreqVector({"1", "pi"}, RatMatrix(1, 2)), InvalidArgument);
  }
  SUBCASE("property: relation certificates and invariance") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> rows(1, 3), cols(1, 4), entry(-3, 3), scale(1, 7);
    int transitive = 0;
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t r = rows(rng), c = cols(rng);
      RatMatrix m(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
      std::vector<std::string> basis;
      for (std::size_t i = 0; i < r; ++i) basis.push_back("b" + std::to_string(i));
      const FreqVector w(basis, m);
      const auto v = torus_is_transitive(w);
      transitive += v.holds;
      if (!v.holds) {
        // The certificate is a nonzero integer relation.
        REQUIRE(v.relation.size() == c);
        CHECK(std::any_of(v.relation.begin(), v.relation.end(), [](const Integer& x) { return x != 0; }));
        for (std::size_t i = 0; i < r; ++i) {
          Rat s = 0;
          for (std::size_t j = 0; j < c; ++j) s += m(i, j) * Rat(v.relation[j]);
          CHECK(s == 0);
        }
      }
      // Permuting coordinates and scaling by a common rational.
      std::vector<std::size_t> perm(c);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const Rat k(scale(rng) * (entry(rng) < 0 ? -1 : 1), scale(rng));
      RatMatrix pm(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) pm(i, j) = m(i, perm[j]) * k;
      CHECK(torus_is_transitive(FreqVector(basis, pm)).holds == v.holds);
    }
    CHECK(transitive > 5);
  }
}

TEST_CASE("torus weak mixing never holds") {
  const auto a = torus_is_weakly_mixing(freq({"1", "sqrt2"}, {{1, 0}, {0, 1}}));
  CHECK_FALSE(a.holds);
  CHECK(a.relation == std::vector<Integer>{1, 0, -1, 0});
  CHECK_FALSE(torus_is_weakly_mixing(FreqVector::rational({Rat(1)})).holds);

  std::mt19937 rng(77);
  std::uniform_int_distribution<int> rows(1, 3), cols(1, 4), entry(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = rows(rng), c = cols(rng);
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    std::vector<std::string> basis(r, "s");
    for (std::size_t i = 0; i < r; ++i) basis[i] += std::to_string(i);
    const auto v = torus_is_weakly_mixing(FreqVector(basis, m));
    CHECK_FALSE(v.holds);
    CHECK(v.relation.size() == 2 * c);
  }
}

TEST_CASE("circle arc sets") {
  SUBCASE("normal form") {
    const CircleArcSet wrap(Rat(1), {{Q("-1/4"), Q("1/4")}});
    CHECK(wrap.covers_zero());
    CHECK(wrap.intervals() == std::vector<std::pair<Rat, Rat>>{{0, Q("1/4")}, {Q("3/4"), 1}});
    CHECK(wrap.contains(0));
    CHECK(wrap.contains(Q("7/8")));
    CHECK_FALSE(wrap.contains(Q("1/4")));
    CHECK(wrap.to_string() == "(-1/4, 1/4) mod 1");
    CHECK(CircleArcSet(Rat(1), {{0, 1}}).contains(0) == false);
    CHECK(CircleArcSet(Rat(1), {{0, 2}}).is_whole());
    CHECK(CircleArcSet(Rat(1), {{Q("1/2"), Q("3/2")}}).contains(Q("1/2")) == false);
    CHECK(CircleArcSet(Rat(1), {{Q("1/2"), Q("3/2")}}).contains(0));
    // Touching open arcs do not merge.
    CHECK(CircleArcSet(Rat(1), {{0, Q("1/2")}, {Q("1/2"), 1}}).intervals().size() == 2);
    CHECK_THROWS_AS(CircleArcSet(Rat(0)), InvalidArgument);
    CHECK_THROWS_AS(arc("1/2", "1/2"), InvalidArgument);
  }
  SUBCASE("N(U, V) examples") {
    CHECK(circle_NUV(arc("0", "1/4"), arc("0", "1/4")) == CircleArcSet(Rat(1), {{Q("-1/4"), Q("1/4")}}));
    const auto half = circle_NUV(arc("0", "1/2"), arc("1/2", "1"));
    CHECK(half == CircleArcSet(Rat(1), {{0, 1}}));
    CHECK_FALSE(half.contains(0));
    CHECK(circle_NUV(arc("0", "1/8"), CircleArcSet::whole()).is_whole());
    CHECK_THROWS_AS(circle_NUV(CircleArcSet(Rat(1)), arc("0", "1/2")), EmptyInput);
    CHECK_THROWS_AS(circle_NUV(arc("0", "1/2", "2"), arc("0", "1/2")), InvalidArgument);
  }
  SUBCASE("property: N(U, V) against direct shift tests") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      const auto u = random_arcs(rng), v = random_arcs(rng);
      const auto n = circle_NUV(u, v);
      for (int k = 0; k < 96; ++k) {
        const Rat t(k, 96);
        CHECK(n.contains(t) == shift_meets(u, v, t));
      }
      // N(U, V) = -N(V, U).
      CAPTURE(u.to_string());
      CAPTURE(v.to_string());
      CHECK(n == circle_NUV(v, u).reflect());
      // Enlarging V enlarges N(U, V).
      const auto bigger = v.unite(random_arcs(rng));
      CHECK(v.subset_of(bigger));
      CHECK(n.subset_of(circle_NUV(u, bigger)));
    }
  }
  SUBCASE("weak mixing refutation") {
    const auto w = circle_weak_mixing_refutation(arc("0", "1/8"), arc("0", "1/8"), arc("0", "1/8"), arc("1/2", "5/8"));
    REQUIRE(w.has_value());
    CHECK(w->n1 == CircleArcSet(Rat(1), {{Q("-1/8"), Q("1/8")}}));
    CHECK(w->n2 == arc("3/8", "5/8"));
    const auto u = arc("0", "1/8");
    CHECK_FALSE(circle_weak_mixing_refutation(u, u, u, u).has_value());
    CHECK_FALSE(circle_weak_mixing_refutation(u, arc("1/2", "5/8"), u, CircleArcSet::whole()).has_value());
  }
}

TEST_CASE("integrate_orbit") {
  SUBCASE("rotation against cos and sin") {
    const auto s = integrate_orbit(rotation(), {Rat(1), Rat(0)}, 1e-3, 10000);
    REQUIRE(s.points.size() == 10001);
    CHECK(s.times.back() == doctest::Approx(10.0));
    CHECK(std::abs(s.points.back()[0] - std::cos(10.0)) < 1e-6);
    CHECK(std::abs(s.points.back()[1] - std::sin(10.0)) < 1e-6);
    double worst = 0;
    for (std::size_t i = 0; i < s.points.size(); i += 97) {
      const double t = s.times[i];
      worst = std::max(worst, std::hypot(s.points[i][0] - std::cos(t), s.points[i][1] - std::sin(t)));
    }
    CHECK(worst < 1e-6);
    CHECK(std::all_of(s.times.begin() + 1, s.times.end(), [&, prev = -1.0](double t) mutable {
      const bool ok = t > prev;
      prev = t;
      return ok;
    }));
  }
  SUBCASE("zero field is constant") {
    const auto s = integrate_orbit(DVariety::affine(R2, {P("0", R2), P("0", R2)}), {Q("1/3"), Rat(-2)}, 0.1, 50);
    for (const auto& p : s.points) CHECK(p == s.points.front());
  }
  SUBCASE("blow-up of x^2") {
    const DVariety x2 = DVariety::affine(R1, {P("x^2", R1)});
    CHECK_THROWS_AS(integrate_orbit(x2, {Rat(1)}, 1e-3, 1100), NumericOverflow);
    // Before the blow-up time the closed form 1/(1 - t) is tracked.
    const auto s = integrate_orbit(x2, {Rat(1)}, 1e-3, 500);
    CHECK(s.points.back()[0] == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("starting point must lie on the variety") {
    const DVariety circle(R2, Ideal(R2, {P("x^2 + y^2 - 1", R2)}), {P("-y", R2), P("x", R2)});
    CHECK_NOTHROW(integrate_orbit(circle, {Rat(0), Rat(1)}, 1e-2, 10));
    CHECK_THROWS_AS(integrate_orbit(circle, {Rat(1), Rat(1)}, 1e-2, 10), InvalidArgument);
    CHECK_THROWS_AS(integrate_orbit(rotation(), {Rat(1)}, 1e-2, 10), InvalidArgument);
    CHECK_THROWS_AS(integrate_orbit(rotation(), {Rat(1), Rat(0)}, 0, 10), InvalidArgument);
  }
  SUBCASE("property: rotation conserves x^2 + y^2") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
      const std::vector<Rat> x0{Rat(c(rng), 2), Rat(c(rng), 3)};
      const auto s = integrate_orbit(rotation(), x0, 1e-3, 10000);
      const double r0 = std::pow(x0[0].get_d(), 2) + std::pow(x0[1].get_d(), 2);
      const Ideal level(R2, {P("x^2 + y^2", R2) - RatPoly(R2, x0[0] * x0[0] + x0[1] * x0[1])});
      CHECK(invariance_drift(s, level) < 1e-6 * std::max(1.0, r0));
    }
  }
}

TEST_CASE("invariance_drift") {
  const auto s = integrate_orbit(rotation(), {Rat(1), Rat(0)}, 1e-3, 10000);
  CHECK(invariance_drift(s, Ideal(R2, {P("x^2 + y^2 - 1", R2)})) < 1e-6);
  CHECK(invariance_drift(s, Ideal(R2, {P("x - 1", R2)})) == doctest::Approx(2.0).epsilon(1e-6));
  const auto still = integrate_orbit(DVariety::affine(R2, {P("0", R2), P("0", R2)}), {Rat(1), Rat(0)}, 0.1, 20);
  CHECK(invariance_drift(still, Ideal(R2, {P("x^2 + y^2 - 1", R2)})) == 0.0);
}

TEST_CASE("zariski_density_up_to_degree") {
  const auto s = integrate_orbit(rotation(), {Rat(1), Rat(0)}, 1e-3, 10000);
  SUBCASE("circle relation at degree 2") {
    const auto d = zariski_density_up_to_degree(s, 2);
    REQUIRE_FALSE(d.dense);
    CHECK(d.residual < 1e-6);
    // x^2 + y^2 - 1 on graded-lex descending monomials x^2, xy, y^2, x, y, 1.
    const std::vector<double> want{1, 0, 1, 0, 0, -1};
    for (std::size_t j = 0; j < want.size(); ++j) CHECK(d.relation[j] == doctest::Approx(want[j]).epsilon(1e-6));
    CHECK(d.relation_text({"x", "y"}) == "x^2 + y^2 - 1");
  }
  SUBCASE("no line contains the circle") {
    const auto d = zariski_density_up_to_degree(s, 1);
    CHECK(d.dense);
    CHECK(d.sigma_min > 1e-3);
  }
  SUBCASE("constant orbit") {
    const auto c = integrate_orbit(DVariety::affine(R2, {P("0", R2), P("0", R2)}), {Rat(2), Rat(3)}, 0.1, 10);
    const auto d = zariski_density_up_to_degree(c, 1);
    CHECK_FALSE(d.dense);
    CHECK(d.residual < 1e-9);
  }
  SUBCASE("insufficient samples") {
    const auto c = integrate_orbit(rotation(), {Rat(1), Rat(0)}, 0.1, 10);  // 11 points, 2 * 6 needed at D = 2
    CHECK_THROWS_AS(zariski_density_up_to_degree(c, 2), InsufficientSamples);
    CHECK_NOTHROW(zariski_density_up_to_degree(c, 1));
  }
  SUBCASE("property: samples on known varieties are never dense past their degree") {
    std::mt19937 rng(44);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
      OrbitSample curve;
      const double a = c(rng), b = c(rng), k = c(rng) == 0 ? 1.0 : c(rng);
      for (int i = 0; i < 60; ++i) {
        const double t = u(rng);
        // y = k x^2 + a x + b: a degree-2 relation in the plane.
        curve.times.push_back(i);
        curve.points.push_back({t, k * t * t + a * t + b});
      }
      for (int d = 2; d <= 4; ++d) CHECK_FALSE(zariski_density_up_to_degree(curve, d).dense);
      OrbitSample cubic;
      for (int i = 0; i < 80; ++i) {
        const double t = u(rng);
        cubic.times.push_back(i);
        cubic.points.push_back({t, t * t, t * t * t});  // twisted cubic
      }
      const auto d2 = zariski_density_up_to_degree(cubic, 2);
      CHECK_FALSE(d2.dense);
      CHECK(d2.residual < 1e-8);
    }
  }
}

TEST_CASE("orbit CSV") {
  const auto s = integrate_orbit(rotation(), {Q("1/3"), Q("2/7")}, 1e-2, 50);
  std::stringstream ss;
  write_orbit_csv(ss, s);
  const std::string text = ss.str();
  CHECK(text.rfind("t,x1,x2\n", 0) == 0);
  const auto back = read_orbit_csv(ss);
  CHECK(back.times == s.times);
  CHECK(back.points == s.points);
  CHECK(back.step == doctest::Approx(s.step));

  std::stringstream bad1("time,x1\n0,1\n");
  CHECK_THROWS_AS(read_orbit_csv(bad1), SyntaxError);
  std::stringstream bad2("t,x1\n0,abc\n");
  CHECK_THROWS_AS(read_orbit_csv(bad2), SyntaxError);
  std::stringstream bad3("t,x1\n0,1\n0,2\n");
  CHECK_THROWS_AS(read_orbit_csv(bad3), InvalidArgument);
  std::stringstream bad4("t,x1\n0,1,2\n");
  CHECK_THROWS_AS(read_orbit_csv(bad4), SyntaxError);
  std::stringstream empty("");
  CHECK_THROWS_AS(read_orbit_csv(empty), EmptyInput);
}

TEST_CASE("parallel kernels match their serial references") {
  const DVariety lv = DVariety::affine(R2, {P("x - x*y", R2), P("x*y - y", R2)});
  std::vector<std::vector<Rat>> starts;
  for (int i = 1; i <= 8; ++i) starts.push_back({Rat(i, 4), Rat(9 - i, 5)});
  const auto a = integrate_orbits(lv, starts, 1e-2, 400, Execution::Serial);
  const auto b = integrate_orbits(lv, starts, 1e-2, 400, Execution::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].points == b[i].points);

  const Ideal z(R2, {P("x*y - 1", R2), P("x - y", R2)});
  CHECK(invariance_drift(a[3], z, Execution::Serial) == invariance_drift(a[3], z, Execution::Parallel));
  CHECK(evaluation_matrix(a[2].points, 3, Execution::Serial) == evaluation_matrix(a[2].points, 3, Execution::Parallel));
  const auto ds = zariski_density_up_to_degree(a[5], 3, 1e-8, Execution::Serial);
  const auto dp = zariski_density_up_to_degree(a[5], 3, 1e-8, Execution::Parallel);
  CHECK(ds.sigma_min == dp.sigma_min);
  CHECK(ds.dense == dp.dense);

  // A failing orbit fails the same way under both policies.
  const DVariety x2 = DVariety::affine(R1, {P("x^2", R1)});
  const std::vector<std::vector<Rat>> blow{{Rat(0)}, {Rat(2)}};
  CHECK_THROWS_AS(integrate_orbits(x2, blow, 1e-2, 200, Execution::Serial), NumericOverflow);
  CHECK_THROWS_AS(integrate_orbits(x2, blow, 1e-2, 200, Execution::Parallel), NumericOverflow);
}
