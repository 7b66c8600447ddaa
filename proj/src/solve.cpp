#include "dtk/solve.hpp"

#include <algorithm>

#include "dtk/unipoly.hpp"

namespace dtk {
namespace {

// Minimal polynomial of x_var over Q modulo a zero-dimensional ideal, found as
// the first linear dependence among the normal forms of 1, x, x^2, ...
UniPoly minimal_polynomial(const Ideal& ideal, std::size_t var) {
  const Ring& ring = ideal.ring();
  const auto& basis = ideal.basis();
  const auto order = MonomialOrder::grevlex();
  const RatPoly x = RatPoly::variable(ring, var);
  struct Row {
    RatPoly vec;
    std::vector<Rat> comb;
  };
  std::vector<Row> rows;
  RatPoly power(ring, Rat(1));
  for (std::size_t k = 0;; ++k) {
    if (k > 0) power = reduce(power * x, basis, order);
    RatPoly w = power;
    std::vector<Rat> comb(k + 1, Rat(0));
    comb[k] = 1;
    for (const auto& row : rows) {
      const Rat c = w.coefficient(row.vec.leading_monomial());
      if (c == 0) continue;
      const Rat f = c / row.vec.leading_coefficient();
      w -= row.vec * f;
      for (std::size_t i = 0; i < row.comb.size(); ++i) comb[i] -= f * row.comb[i];
    }
    if (w.is_zero()) return UniPoly(std::move(comb));
    rows.push_back({std::move(w), std::move(comb)});
  }
}

bool zero_dimensional(const Ideal& ideal) {
  const std::size_t n = ideal.ring().size();
  std::vector<bool> pure(n, false);
  for (const auto& g : ideal.basis()) {
    const Monomial m = leading_monomial(g, MonomialOrder::grevlex());
    std::size_t involved = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] > 0) {
        ++involved;
        var = i;
      }
    if (involved == 1) pure[var] = true;
  }
  return std::all_of(pure.begin(), pure.end(), [](bool b) { return b; });
}

void solve_rec(const Ideal& ideal, std::size_t var, std::vector<Rat>& partial, std::vector<std::vector<Rat>>& out) {
  if (ideal.is_unit()) return;
  const std::size_t n = ideal.ring().size();
  if (var == n) {
    out.push_back(partial);
    return;
  }
  for (const auto& root : rational_roots(minimal_polynomial(ideal, var))) {
    partial[var] = root.root;
    const RatPoly pin = RatPoly::variable(ideal.ring(), var) - RatPoly(ideal.ring(), root.root);
    solve_rec(Ideal(ideal.ring(), ideal.basis()).with({pin}), var + 1, partial, out);
  }
}

std::vector<std::vector<Rat>> solve_zero_dimensional(const Ideal& ideal) {
  std::vector<Rat> partial(ideal.ring().size(), Rat(0));
  std::vector<std::vector<Rat>> out;
  solve_rec(ideal, 0, partial, out);
  return out;
}

// x_var = value, where value does not involve x_var.
struct Substitution {
  std::size_t var;
  RatPoly value;
};

// Eliminates variables that some generator determines outright: a generator
// a*x + h with a constant and h free of x. Cheapest values first. What is left
// is expressed in a ring on the surviving variables.
struct Presolved {
  std::vector<Substitution> subs;  // in elimination order
  std::vector<std::size_t> kept;   // original indices of the surviving variables
  Ideal reduced;                   // over the surviving variables
  bool inconsistent = false;
};

Presolved presolve(const Ideal& ideal) {
  const Ring& ring = ideal.ring();
  const std::size_t n = ring.size();
  Presolved out;
  std::vector<RatPoly> gens = ideal.generators();
  std::vector<bool> gone(n, false);
  for (;;) {
    std::erase_if(gens, [](const RatPoly& g) { return g.is_zero(); });
    if (std::any_of(gens.begin(), gens.end(), [](const RatPoly& g) { return g.is_constant(); })) {
      out.inconsistent = true;
      return out;
    }
    std::size_t best_gen = gens.size(), best_var = n;
    int best_degree = 0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const RatPoly& g = gens[k];
      for (std::size_t v = 0; v < n; ++v) {
        if (g.degree_in(v) != 1) continue;
        const Rat a = g.coefficient(Monomial::variable(n, v));
        if (a == 0) continue;
        RatPoly rest = g - RatPoly::monomial(ring, Monomial::variable(n, v), a);
        if (rest.involves(v)) continue;
        const int d = rest.total_degree();
        if (best_gen == gens.size() || d < best_degree) {
          best_gen = k;
          best_var = v;
          best_degree = d;
        }
      }
    }
    if (best_gen == gens.size()) break;
    const RatPoly& g = gens[best_gen];
    const Rat a = g.coefficient(Monomial::variable(n, best_var));
    RatPoly value = (RatPoly::monomial(ring, Monomial::variable(n, best_var), a) - g) * (Rat(1) / a);
    gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(best_gen));
    for (auto& h : gens)
      if (h.involves(best_var)) h = h.substitute(best_var, value);
    for (auto& s : out.subs)
      if (s.value.involves(best_var)) s.value = s.value.substitute(best_var, value);
    gone[best_var] = true;
    out.subs.push_back({best_var, std::move(value)});
  }
  std::vector<std::string> names;
  std::vector<std::size_t> map(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (!gone[v]) {
      map[v] = out.kept.size();
      out.kept.push_back(v);
      names.push_back(ring.name(v));
    }
  const Ring sub(names);
  std::vector<RatPoly> mapped;
  for (const auto& g : gens) mapped.push_back(g.map_to(sub, map));
  out.reduced = Ideal(sub, std::move(mapped));
  return out;
}

std::vector<std::vector<Rat>> lift(const Presolved& pre, std::size_t n, const std::vector<std::vector<Rat>>& points) {
  std::vector<std::vector<Rat>> out;
  for (const auto& p : points) {
    std::vector<Rat> full(n, Rat(0));
    for (std::size_t k = 0; k < pre.kept.size(); ++k) full[pre.kept[k]] = p[k];
    // Every substitution value is kept in terms of surviving variables only.
    for (const auto& s : pre.subs) full[s.var] = s.value.evaluate(full);
    out.push_back(std::move(full));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<Rat>> rational_solutions(const Ideal& ideal) {
  const std::size_t n = ideal.ring().size();
  if (n == 0) return ideal.is_unit() ? std::vector<std::vector<Rat>>{} : std::vector<std::vector<Rat>>{{}};
  const Presolved pre = presolve(ideal);
  if (pre.inconsistent) return {};
  if (pre.kept.empty()) return lift(pre, n, {{}});
  if (pre.reduced.is_unit()) return {};
  if (!zero_dimensional(pre.reduced)) throw InvalidArgument("rational_solutions: ideal is not zero-dimensional");
  return lift(pre, n, solve_zero_dimensional(pre.reduced));
}

SliceSolutions rational_points_of_slice(const Ideal& ideal, int attempts) {
  const std::size_t n = ideal.ring().size();
  const Presolved pre = presolve(ideal);
  if (pre.inconsistent) return {};
  if (pre.kept.empty()) return {lift(pre, n, {{}}), 0};
  const Ideal& red = pre.reduced;
  if (red.is_unit()) return {};
  const auto free = maximal_independent_set(red);
  if (free.empty()) return {lift(pre, n, solve_zero_dimensional(red)), 0};
  static const int values[] = {0, 1, -1, 2, -2, 3};
  for (int a = 0; a < attempts && a < 6; ++a) {
    std::vector<RatPoly> pins;
    for (std::size_t v : free) pins.push_back(RatPoly::variable(red.ring(), v) - RatPoly(red.ring(), Rat(values[a])));
    Ideal slice = red.with(pins);
    if (slice.is_unit()) continue;
    if (maximal_independent_set(slice).empty()) return {lift(pre, n, solve_zero_dimensional(slice)), free.size()};
  }
  return {{}, free.size()};
}

}  // namespace dtk
