#include "dtk/family.hpp"

#include "dtk/errors.hpp"
#include "dtk/linalg.hpp"

namespace dtk {
namespace {

std::vector<RatPoly> total_field(const Ring& ring, std::size_t params, const std::vector<RatPoly>& field) {
  if (params > ring.size() || field.size() + params != ring.size())
    throw InvalidArgument("DFamily: need one field component per fiber coordinate");
  std::vector<RatPoly> out(params, RatPoly(ring));
  for (const auto& c : field) {
    require_same_ring(c.ring(), ring, "DFamily");
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> coordinate_names(int n) {
  static const char* small[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(n <= 3 ? small[i] : "x_" + std::to_string(i + 1));
  return out;
}

std::string coefficient_name(int component, const Monomial& m) {
  std::string name = component < 26 ? std::string(1, static_cast<char>('a' + component)) : "k" + std::to_string(component);
  for (std::size_t v = 0; v < m.size(); ++v) name += "_" + std::to_string(m[v]);
  return name;
}

// The t^k coefficient of g, as a polynomial in the same ring without t.
std::vector<RatPoly> layers(const RatPoly& g, std::size_t t) {
  std::vector<RatPoly> out(std::max(g.degree_in(t), 0) + 1, RatPoly(g.ring()));
  for (const auto& [m, c] : g.terms()) {
    Monomial rest = m;
    rest[t] = 0;
    out[m[t]].add_term(rest, c);
  }
  return out;
}

}  // namespace

DFamily::DFamily(Ring ring, std::size_t parameters, std::vector<RatPoly> field, Ideal fiber_variety)
    : ring_(ring),
      params_(parameters),
      field_(field),
      variety_(fiber_variety),
      total_(ring, fiber_variety, total_field(ring, parameters, field)) {}

DFamily::DFamily(Ring ring, std::size_t parameters, std::vector<RatPoly> field)
    : DFamily(ring, parameters, std::move(field), Ideal::zero(ring)) {}

std::vector<std::string> DFamily::parameter_names() const {
  return {ring_.names().begin(), ring_.names().begin() + static_cast<std::ptrdiff_t>(params_)};
}

std::vector<std::string> DFamily::fiber_names() const {
  return {ring_.names().begin() + static_cast<std::ptrdiff_t>(params_), ring_.names().end()};
}

DFamily universal_field(int n, int d) {
  if (n < 1 || d < 0) throw InvalidArgument("universal_field: need n >= 1 and d >= 0");
  auto monos = monomials_up_to(static_cast<std::size_t>(n), d);
  std::reverse(monos.begin(), monos.end());  // 1, x, y, ..., ascending
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    for (const auto& m : monos) names.push_back(coefficient_name(i, m));
  const std::size_t params = names.size();
  for (const auto& x : coordinate_names(n)) names.push_back(x);
  const Ring ring(names);
  std::vector<RatPoly> field;
  std::size_t a = 0;
  for (int i = 0; i < n; ++i) {
    RatPoly c(ring);
    for (const auto& m : monos) {
      Monomial full(ring.size());
      for (int v = 0; v < n; ++v) full[params + v] = m[v];
      full[a++] = 1;
      c.add_term(full, Rat(1));
    }
    field.push_back(std::move(c));
  }
  return DFamily(ring, params, std::move(field));
}

DVariety specialize(const DFamily& f, const std::map<std::string, Rat>& point) {
  const auto params = f.parameter_names();
  for (const auto& [name, value] : point)
    if (std::find(params.begin(), params.end(), name) == params.end())
      throw InvalidArgument("specialize: '" + name + "' is not a parameter");
  const Ring fiber(f.fiber_names());
  std::vector<std::size_t> map(f.ring().size(), 0);
  for (std::size_t v = 0; v < fiber.size(); ++v) map[f.parameter_count() + v] = v;
  auto restrict = [&](RatPoly p) {
    for (std::size_t s = 0; s < params.size(); ++s) {
      const auto it = point.find(params[s]);
      if (it == point.end()) throw MissingParameter("specialize: no value for parameter '" + params[s] + "'");
      if (p.involves(s)) p = p.substitute(s, it->second);
    }
    return p.map_to(fiber, map);
  };
  std::vector<RatPoly> field, gens;
  for (const auto& c : f.field()) field.push_back(restrict(c));
  for (const auto& g : f.fiber_variety().generators()) gens.push_back(restrict(g));
  return DVariety(fiber, Ideal(fiber, std::move(gens)), std::move(field));
}

InitialTerm initial_term(const RatPoly& g, std::size_t t) {
  if (g.is_zero()) throw ZeroPolynomial("initial_term of the zero polynomial");
  int order = g.degree_in(t);
  for (const auto& [m, c] : g.terms()) order = std::min(order, m[t]);
  RatPoly term(g.ring());
  for (const auto& [m, c] : g.terms()) {
    Monomial shifted = m;
    shifted[t] -= order;
    term.add_term(shifted, c);
  }
  return {order, std::move(term)};
}

InitialTerm initial_term(const RatPoly& g, const std::string& t) { return initial_term(g, g.ring().require_index(t)); }

FiberExpansion fiber_expansion(const DFamily& f, const RatPoly& g, int order) {
  if (f.parameter_count() != 1) throw InvalidArgument("fiber_expansion: the family must have exactly one parameter");
  if (order < 0) throw InvalidArgument("fiber_expansion: negative order");
  const Ideal& variety = f.fiber_variety();
  for (const auto& h : variety.generators())
    if (h.involves(0)) throw InvalidArgument("fiber_expansion: the fiber variety must not involve the parameter");
  if (!variety.contains(derive(f.total_space(), g))) throw NotAnIntegral("fiber_expansion: v(g) is not zero on the family");
  // Generators free of t keep the t-degree of every term during reduction, so
  // the normal form can be read layer by layer.
  const RatPoly nf = variety.is_zero() ? g : reduce(g, variety.basis(), MonomialOrder::grevlex());
  const auto ls = nf.is_zero() ? std::vector<RatPoly>{} : layers(nf, 0);
  FiberExpansion out;
  for (int k = 0; k < order; ++k) {
    const RatPoly layer = k < static_cast<int>(ls.size()) ? ls[k] : RatPoly(g.ring());
    if (!layer.is_constant() && !layer.is_zero()) {
      out.obstruction = k;
      out.obstruction_layer = layer;
      break;
    }
    out.coefficients.push_back(layer.constant_term());
  }
  return out;
}

namespace {

struct Found {
  std::vector<RatFunction> candidates;
  bool complete = true;
};

Found search_integrals(const DVariety& x, int max_degree, const SearchOptions& opts) {
  Found out;
  try {
    for (const auto& p : polynomial_integrals(x, max_degree, opts)) out.candidates.emplace_back(p);
  } catch (const ResourceLimit&) {
    out.complete = false;
  }
  const DarbouxSearch ds = darboux_search(x, max_degree, opts);
  out.complete = out.complete && ds.complete();
  for (auto& r : assemble_rational_integrals(x, ds.elements)) out.candidates.push_back(std::move(r));
  return out;
}

}  // namespace

SpecializationReport specialization_check(const DFamily& f, const Rat& fiber_point, int max_degree,
                                          const SearchOptions& opts) {
  if (f.parameter_count() != 1) throw InvalidArgument("specialization_check: the family must have exactly one parameter");
  SpecializationReport rep;
  rep.degree_bound = max_degree;
  rep.fiber_point = fiber_point;

  const Found total = search_integrals(f.total_space(), max_degree, opts);
  rep.total_complete = total.complete;
  const RatFunction t(RatPoly::variable(f.ring(), 0));
  for (const auto& c : total.candidates)
    if (jacobian_rank({c, t}) == 2) {
      rep.total_integral = c;
      break;
    }

  const DVariety fiber = specialize(f, {{f.parameter_names()[0], fiber_point}});
  const Found special = search_integrals(fiber, max_degree, opts);
  rep.fiber_complete = special.complete;
  for (const auto& c : special.candidates)
    if (!is_constant_on(fiber, c)) {
      rep.fiber_integral = c;
      break;
    }
  return rep;
}

std::size_t jacobian_rank(const std::vector<RatFunction>& fs) {
  if (fs.empty()) return 0;
  const Ring& ring = fs.front().ring();
  PolyMatrix m;
  for (const auto& f : fs) {
    require_same_ring(f.ring(), ring, "jacobian_rank");
    // d(p/q) = (p' q - p q') / q^2; rescaling a row by q^2 keeps the rank.
    std::vector<RatPoly> row;
    for (std::size_t v = 0; v < ring.size(); ++v)
      row.push_back(f.numerator().derivative(v) * f.denominator() - f.numerator() * f.denominator().derivative(v));
    m.push_back(std::move(row));
  }
  return rank(std::move(m));
}

}  // namespace dtk
