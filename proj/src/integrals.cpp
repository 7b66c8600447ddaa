#include "dtk/integrals.hpp"

#include <algorithm>
#include <map>

#include "dtk/linalg.hpp"
#include "dtk/solve.hpp"
#include "dtk/unipoly.hpp"

namespace dtk {
namespace {

RatPoly mono(const Ring& r, const Monomial& m) { return RatPoly::monomial(r, m); }

bool field_is_affine_linear(const DVariety& x) { return x.variety().is_zero() && x.field_degree() <= 1; }

// Degree-one Darboux polynomials of an affine linear field: rational
// eigenvectors of v acting on span{1, x_1, ..., x_n}.
std::vector<DarbouxElement> linear_eigen_darboux(const DVariety& x) {
  const Ring& r = x.ring();
  const std::size_t n = r.size();
  std::vector<Monomial> basis{Monomial(n)};
  for (std::size_t i = 0; i < n; ++i) basis.push_back(Monomial::variable(n, i));
  RatMatrix m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t row = 0; row <= n; ++row) m(row, i + 1) = x.field()[i].coefficient(basis[row]);

  const Ring lr({"lambda"});
  const RatPoly lambda = RatPoly::variable(lr, 0);
  PolyMatrix pm(n + 1, std::vector<RatPoly>(n + 1, RatPoly(lr)));
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b) pm[a][b] = RatPoly(lr, m(a, b)) - (a == b ? lambda : RatPoly(lr));
  const UniPoly charpoly = UniPoly::from_poly(determinant(pm, lr), 0);

  std::vector<DarbouxElement> out;
  for (const auto& root : rational_roots(charpoly)) {
    RatMatrix shifted = m;
    for (std::size_t a = 0; a <= n; ++a) shifted(a, a) -= root.root;
    for (const auto& v : nullspace(shifted)) {
      RatPoly p(r);
      for (std::size_t k = 0; k <= n; ++k) p.add_term(basis[k], v[k]);
      if (p.is_constant()) continue;
      out.push_back({p.monic(), RatPoly(r, root.root)});
    }
  }
  return out;
}

// Tables shared by every leading-monomial system of one search.
struct DarbouxTables {
  std::vector<Monomial> p_monos;               // candidate support, grlex descending
  std::vector<Monomial> k_monos;               // cofactor support
  std::vector<RatPoly> d_p;                    // NF(v(m_j))
  std::vector<std::vector<RatPoly>> k_times_p; // [l][j] = NF(k_l * m_j)
};

DarbouxTables make_tables(const DVariety& x, int max_degree, Execution exec) {
  DarbouxTables t;
  const Ideal& ideal = x.variety();
  t.p_monos = standard_monomials(ideal, max_degree);
  t.k_monos = standard_monomials(ideal, std::max(x.field_degree() - 1, 0));
  const Ring& r = x.ring();
  t.d_p.resize(t.p_monos.size());
  t.k_times_p.assign(t.k_monos.size(), std::vector<RatPoly>(t.p_monos.size()));
  for_each_index(t.p_monos.size(), exec, [&](std::size_t j) {
    const RatPoly mj = mono(r, t.p_monos[j]);
    t.d_p[j] = normal_form(derive(x, mj), ideal);
    for (std::size_t l = 0; l < t.k_monos.size(); ++l)
      t.k_times_p[l][j] = normal_form(mj.mul_monomial(t.k_monos[l]), ideal);
  });
  return t;
}

// Darboux pairs whose polynomial has leading monomial p_monos[lead] with
// coefficient 1, all other support strictly below it.
std::vector<DarbouxElement> solve_normalization(const DVariety& x, const DarbouxTables& t, std::size_t lead) {
  const Ring& r = x.ring();
  const std::size_t nc = t.p_monos.size() - lead - 1;
  const std::size_t nk = t.k_monos.size();
  std::vector<std::string> names;
  for (std::size_t j = 0; j < nc; ++j) names.push_back("c" + std::to_string(j));
  for (std::size_t l = 0; l < nk; ++l) names.push_back("e" + std::to_string(l));
  const Ring u(names);
  const std::size_t nu = u.size();
  auto c_var = [&](std::size_t j) { return Monomial::variable(nu, j); };
  auto e_var = [&](std::size_t l) { return Monomial::variable(nu, nc + l); };
  const Monomial one(nu);

  // Coefficient of each x-monomial in v(p) - k p, as a polynomial in the unknowns.
  std::map<Monomial, RatPoly, GrlexGreater> eqs;
  auto add = [&](const RatPoly& image, const Monomial& unknowns, const Rat& sign) {
    for (const auto& [s, c] : image.terms()) {
      auto it = eqs.try_emplace(s, RatPoly(u)).first;
      it->second.add_term(unknowns, sign * c);
    }
  };
  add(t.d_p[lead], one, 1);
  for (std::size_t j = 0; j < nc; ++j) add(t.d_p[lead + 1 + j], c_var(j), 1);
  for (std::size_t l = 0; l < nk; ++l) {
    add(t.k_times_p[l][lead], e_var(l), -1);
    for (std::size_t j = 0; j < nc; ++j) add(t.k_times_p[l][lead + 1 + j], c_var(j) * e_var(l), -1);
  }
  std::vector<RatPoly> gens, top_gens;
  // On affine space the component of top x-degree involves only the top
  // homogeneous parts of p and k; solving it first leaves lower layers that
  // are linear once the layers above are known.
  const int s_deg = t.p_monos[lead].total_degree();
  const int k_deg = std::max(x.field_degree() - 1, 0);
  const bool graded = x.variety().is_zero();
  for (auto& [s, poly] : eqs) {
    if (poly.is_zero()) continue;
    if (graded && s.total_degree() == s_deg + k_deg) top_gens.push_back(poly);
    gens.push_back(std::move(poly));
  }
  const Ideal system(u, gens);

  std::vector<std::vector<Rat>> points;
  if (graded) {
    std::vector<std::size_t> top;  // unknowns of the top homogeneous parts
    for (std::size_t j = 0; j < nc; ++j)
      if (t.p_monos[lead + 1 + j].total_degree() == s_deg) top.push_back(j);
    for (std::size_t l = 0; l < nk; ++l)
      if (t.k_monos[l].total_degree() == k_deg) top.push_back(nc + l);
    std::vector<std::string> top_names;
    std::vector<std::size_t> map(nu, 0);
    for (std::size_t i = 0; i < top.size(); ++i) {
      map[top[i]] = i;
      top_names.push_back(names[top[i]]);
    }
    const Ring tr(top_names);
    std::vector<RatPoly> mapped;
    for (const auto& g : top_gens) mapped.push_back(g.map_to(tr, map));
    for (const auto& tp : rational_points_of_slice(Ideal(tr, std::move(mapped))).points) {
      std::vector<RatPoly> pins;
      for (std::size_t i = 0; i < top.size(); ++i)
        pins.push_back(RatPoly::variable(u, top[i]) - RatPoly(u, tp[i]));
      for (auto& pt : rational_points_of_slice(system.with(pins)).points) points.push_back(std::move(pt));
    }
  } else {
    points = rational_points_of_slice(system).points;
  }

  std::vector<DarbouxElement> out;
  for (const auto& point : points) {
    RatPoly p = mono(r, t.p_monos[lead]);
    for (std::size_t j = 0; j < nc; ++j) p.add_term(t.p_monos[lead + 1 + j], point[j]);
    RatPoly k(r);
    for (std::size_t l = 0; l < nk; ++l) k.add_term(t.k_monos[l], point[nc + l]);
    if (!normal_form(derive(x, p) - k * p, x.variety()).is_zero()) continue;  // defensive
    out.push_back({std::move(p), std::move(k)});
  }
  return out;
}

void append_unique(std::vector<DarbouxElement>& out, const DarbouxElement& e) {
  for (const auto& o : out)
    if (o.poly == e.poly) return;
  out.push_back(e);
}

}  // namespace

std::vector<Monomial> standard_monomials(const Ideal& ideal, int max_degree) {
  auto all = monomials_up_to(ideal.ring().size(), max_degree);
  if (ideal.is_zero()) return all;
  std::vector<Monomial> leads;
  for (const auto& g : ideal.basis()) leads.push_back(leading_monomial(g, MonomialOrder::grevlex()));
  std::erase_if(all, [&](const Monomial& m) {
    return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  });
  return all;
}

std::vector<RatPoly> polynomial_integrals(const DVariety& x, int max_degree, const SearchOptions& opts) {
  if (max_degree < 1) throw InvalidArgument("degree bound must be >= 1");
  const Ring& r = x.ring();
  auto monos = standard_monomials(x.variety(), max_degree);
  std::erase_if(monos, [](const Monomial& m) { return m.is_one(); });
  if (monos.size() > opts.max_unknowns)
    throw ResourceLimit("polynomial_integrals: " + std::to_string(monos.size()) + " unknowns exceed the cap");

  std::vector<RatPoly> images(monos.size());
  for_each_index(monos.size(), opts.execution,
                 [&](std::size_t j) { images[j] = normal_form(derive(x, mono(r, monos[j])), x.variety()); });

  std::map<Monomial, std::size_t, GrlexGreater> rows;
  for (const auto& img : images)
    for (const auto& [s, c] : img.terms()) rows.try_emplace(s, rows.size());
  RatMatrix m(rows.size(), monos.size());
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (const auto& [s, c] : images[j].terms()) m(rows.at(s), j) = c;

  std::vector<RatPoly> out;
  for (const auto& v : nullspace(m)) {
    RatPoly f(r);
    for (std::size_t j = 0; j < monos.size(); ++j) f.add_term(monos[j], v[j]);
    out.push_back(f.primitive());
  }
  return out;
}

DarbouxSearch darboux_search(const DVariety& x, int max_degree, const SearchOptions& opts) {
  if (max_degree < 1) throw InvalidArgument("degree bound must be >= 1");
  DarbouxSearch result;
  const bool linear = field_is_affine_linear(x);
  if (linear) {
    for (const auto& e : linear_eigen_darboux(x)) append_unique(result.elements, e);
  }
  const DarbouxTables tables = make_tables(x, max_degree, opts.execution);
  std::vector<std::size_t> leads;
  for (std::size_t j = 0; j < tables.p_monos.size(); ++j) {
    const int deg = tables.p_monos[j].total_degree();
    if (deg == 0 || (linear && deg == 1)) continue;
    leads.push_back(j);
  }
  // leads[0] has the most unknowns, so dynamic scheduling starts with the largest systems.
  std::vector<std::vector<DarbouxElement>> found(leads.size());
  std::vector<std::string> skipped(leads.size());
  for_each_index(leads.size(), opts.execution, [&](std::size_t i) {
    const std::size_t lead = leads[i];
    const std::size_t unknowns = tables.p_monos.size() - lead - 1 + tables.k_monos.size();
    const std::string label = mono(x.ring(), tables.p_monos[lead]).to_string();
    if (unknowns > opts.max_unknowns) {
      skipped[i] = label + " (unknowns cap)";
      return;
    }
    try {
      found[i] = solve_normalization(x, tables, lead);
    } catch (const ResourceLimit& e) {
      skipped[i] = label + " (" + e.what() + ")";
    }
  });
  result.normalizations = leads.size() + (linear ? 1 : 0);
  // Merge in ascending leading monomial order, independent of scheduling.
  for (std::size_t i = leads.size(); i-- > 0;) {
    for (const auto& e : found[i]) append_unique(result.elements, e);
    if (!skipped[i].empty()) result.skipped.push_back(skipped[i]);
  }
  return result;
}

std::vector<DarbouxElement> darboux_polynomials(const DVariety& x, int max_degree, const SearchOptions& opts) {
  auto search = darboux_search(x, max_degree, opts);
  if (!search.complete())
    throw ResourceLimit("darboux_polynomials: normalization " + search.skipped.front() + " hit a resource cap");
  return std::move(search.elements);
}

std::vector<RatFunction> assemble_rational_integrals(const DVariety& x, const std::vector<DarbouxElement>& elements) {
  const Ring& r = x.ring();
  // Drop constants and elements that are multiples of a smaller element; the
  // survivors generate the same multiplicative relations.
  std::vector<const DarbouxElement*> gens;
  for (const auto& e : elements) {
    require_same_ring(r, e.poly.ring(), "assemble_rational_integrals");
    if (e.poly.is_constant()) continue;
    const bool composite = std::any_of(elements.begin(), elements.end(), [&](const DarbouxElement& o) {
      return &o != &e && !o.poly.is_constant() && o.poly.total_degree() < e.poly.total_degree() &&
             divide_exact(e.poly, o.poly).has_value();
    });
    if (!composite) gens.push_back(&e);
  }

  std::map<Monomial, std::size_t, GrlexGreater> rows;
  for (const auto* e : gens)
    for (const auto& [s, c] : e->cofactor.terms()) rows.try_emplace(s, rows.size());
  RatMatrix m(rows.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (const auto& [s, c] : gens[j]->cofactor.terms()) m(rows.at(s), j) = c;

  std::vector<RatFunction> out;
  for (const auto& v : nullspace(m)) {
    const auto a = primitive_integer_vector(v);
    RatPoly num(r, Rat(1)), den(r, Rat(1));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (a[j] == 0) continue;
      const RatPoly power = gens[j]->poly.pow(static_cast<unsigned>(Integer(abs(a[j])).get_ui()));
      if (a[j] > 0)
        num = num * power;
      else
        den = den * power;
    }
    try {
      RatFunction f(num, den);
      if (!is_first_integral(x, f) || is_constant_on(x, f)) continue;
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
    } catch (const ZeroDenominator&) {
      continue;
    }
  }
  return out;
}

std::string to_string(Verdict v) { return v == Verdict::Fails ? "Fails" : "Inconclusive"; }

IntegralReport property_O_bounded(const DVariety& x, int max_power, int max_degree, const SearchOptions& opts) {
  if (max_power < 1 || max_degree < 1) throw InvalidArgument("property_O_bounded needs N >= 1 and D >= 1");
  IntegralReport report;
  report.max_power = max_power;
  report.max_degree = max_degree;
  std::vector<std::vector<RatFunction>> found(max_power);
  report.searched.resize(max_power);

  SearchOptions inner = opts;
  for_each_index(static_cast<std::size_t>(max_power), opts.execution, [&](std::size_t i) {
    const int n = static_cast<int>(i) + 1;
    PowerCoverage& cov = report.searched[i];
    cov.power = n;
    cov.degree = max_degree;
    const DVariety power = product(x, n);
    auto keep = [&](RatFunction f) {
      if (std::find(found[i].begin(), found[i].end(), f) == found[i].end()) found[i].push_back(std::move(f));
    };
    std::vector<std::string> notes;
    try {
      for (auto& f : polynomial_integrals(power, max_degree, inner)) keep(RatFunction(std::move(f)));
    } catch (const ResourceLimit& e) {
      notes.push_back(std::string("polynomial integrals: ") + e.what());
    }
    try {
      const auto search = darboux_search(power, max_degree, inner);
      cov.darboux_elements = search.elements.size();
      for (const auto& s : search.skipped) notes.push_back("skipped normalization " + s);
      for (auto& f : assemble_rational_integrals(power, search.elements)) keep(std::move(f));
    } catch (const ResourceLimit& e) {
      notes.push_back(std::string("darboux search: ") + e.what());
    }
    cov.complete = notes.empty();
    for (const auto& s : notes) cov.note += (cov.note.empty() ? "" : "; ") + s;
  });

  for (int i = 0; i < max_power; ++i)
    for (auto& f : found[i]) report.witnesses.push_back({i + 1, std::move(f)});
  report.verdict = report.witnesses.empty() ? Verdict::Inconclusive : Verdict::Fails;
  return report;
}

}  // namespace dtk
