#include "dtk/dvariety.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "dtk/errors.hpp"
#include "dtk/parser.hpp"
#include "dtk/unipoly.hpp"

namespace dtk {

// ---------------------------------------------------------------------------
// DVariety

DVariety::DVariety(Ring ring, Ideal variety, std::vector<RatPoly> field)
    : ring_(std::move(ring)), variety_(std::move(variety)), field_(std::move(field)) {
  require_same_ring(ring_, variety_.ring(), "DVariety variety ideal");
  if (field_.size() != ring_.size())
    throw InvalidArgument("vector field has " + std::to_string(field_.size()) + " components for " +
                          std::to_string(ring_.size()) + " variables");
  for (const auto& f : field_) require_same_ring(ring_, f.ring(), "DVariety field component");
  for (const auto& g : variety_.generators())
    if (!normal_form(derive(*this, g), variety_).is_zero())
      throw NotInvariant("variety generator " + g.to_string() + " is not stable under the field");
}

DVariety DVariety::affine(const Ring& ring, std::vector<RatPoly> field) {
  return DVariety(ring, Ideal::zero(ring), std::move(field));
}

int DVariety::field_degree() const noexcept {
  int d = -1;
  for (const auto& f : field_) d = std::max(d, f.total_degree());
  return d;
}

// ---------------------------------------------------------------------------
// RatFunction

RatFunction::RatFunction(RatPoly numerator, RatPoly denominator) {
  require_same_ring(numerator.ring(), denominator.ring(), "RatFunction");
  if (denominator.is_zero()) throw ZeroDenominator("rational function with zero denominator");
  if (numerator.is_zero()) {
    num_ = std::move(numerator);
    den_ = RatPoly(num_.ring(), Rat(1));
    return;
  }
  RatPoly g = gcd(numerator, denominator);
  num_ = *divide_exact(numerator, g);
  den_ = *divide_exact(denominator, g);
  const Rat lc = den_.leading_coefficient();
  num_ *= Rat(1) / lc;
  den_ *= Rat(1) / lc;
}

RatFunction::RatFunction(RatPoly polynomial)
    : num_(std::move(polynomial)), den_(RatPoly(num_.ring(), Rat(1))) {}

RatFunction RatFunction::inverse() const {
  if (num_.is_zero()) throw ZeroDenominator("inverse of zero");
  return RatFunction(den_, num_);
}

RatFunction RatFunction::operator*(const RatFunction& o) const {
  return RatFunction(num_ * o.num_, den_ * o.den_);
}

std::string RatFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  const bool bare_num = num_.term_count() == 1 && num_.leading_coefficient() > 0;
  const auto& m = den_.leading_monomial();
  const bool bare_den = den_.term_count() == 1 &&
                        std::count_if(m.exponents().begin(), m.exponents().end(), [](int e) { return e > 0; }) == 1;
  return (bare_num ? num_.to_string() : "(" + num_.to_string() + ")") + "/" +
         (bare_den ? den_.to_string() : "(" + den_.to_string() + ")");
}

RatFunction parse_rational_function(std::string_view text, const Ring& ring) {
  // Find the top-level division: a '/' outside parentheses that is not a
  // rational literal (number on the left and a digit on the right).
  int depth = 0;
  std::size_t split = std::string_view::npos;
  bool after_number = false;  // last token was a standalone number
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i + 1 < text.size() && (std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_')) ++i;
      after_number = false;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) ++i;
      after_number = true;
      continue;
    }
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      const bool literal = after_number && j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]));
      if (!literal) {
        if (split != std::string_view::npos) throw SyntaxError("more than one division", i);
        split = i;
      }
    }
    after_number = false;
  }
  if (split == std::string_view::npos) return RatFunction(parse_poly(text, ring));
  RatPoly num = parse_poly(text.substr(0, split), ring);
  RatPoly den;
  try {
    den = parse_poly(text.substr(split + 1), ring);
  } catch (const SyntaxError& e) {
    throw SyntaxError("bad denominator", split + 1 + e.position());
  } catch (const UnknownVariable& e) {
    throw UnknownVariable(e.name(), split + 1 + e.position());
  }
  return RatFunction(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// Derivation and invariance

RatPoly derive(const DVariety& x, const RatPoly& f) {
  require_same_ring(x.ring(), f.ring(), "derive");
  RatPoly out(x.ring());
  for (std::size_t i = 0; i < x.dimension(); ++i) {
    if (x.field()[i].is_zero() || !f.involves(i)) continue;
    out += x.field()[i] * f.derivative(i);
  }
  return out;
}

RatFunction derive_rational(const DVariety& x, const RatFunction& f) {
  require_same_ring(x.ring(), f.ring(), "derive_rational");
  const RatPoly& p = f.numerator();
  const RatPoly& q = f.denominator();
  RatPoly num = derive(x, p) * q - p * derive(x, q);
  return RatFunction(std::move(num), q * q);
}

bool is_invariant(const DVariety& x, const Ideal& z) {
  require_same_ring(x.ring(), z.ring(), "is_invariant");
  if (z.is_zero()) return true;
  const Ideal ambient = z + x.variety();
  return std::all_of(z.generators().begin(), z.generators().end(),
                     [&](const RatPoly& g) { return normal_form(derive(x, g), ambient).is_zero(); });
}

std::size_t product_index(const DVariety& x, int copy, std::size_t var) {
  return static_cast<std::size_t>(copy) * x.dimension() + var;
}

DVariety product(const DVariety& x, int n) {
  if (n < 1) throw InvalidArgument("product power must be >= 1");
  const std::size_t d = x.dimension();
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k)
    for (std::size_t i = 0; i < d; ++i) names.push_back(x.ring().name(i) + "_" + std::to_string(k));
  Ring ring(std::move(names));
  std::vector<RatPoly> field;
  std::vector<RatPoly> gens;
  for (int k = 0; k < n; ++k) {
    std::vector<std::size_t> map(d);
    for (std::size_t i = 0; i < d; ++i) map[i] = product_index(x, k, i);
    for (const auto& f : x.field()) field.push_back(f.map_to(ring, map));
    for (const auto& g : x.variety().generators()) gens.push_back(g.map_to(ring, map));
  }
  return DVariety(ring, Ideal(ring, std::move(gens)), std::move(field));
}

DVariety with_inert_coordinate(const DVariety& x, const std::string& base) {
  const Ring ext = x.ring().extended({x.ring().fresh_name(base)});
  std::vector<RatPoly> field;
  for (const auto& f : x.field()) field.push_back(f.rename_into(ext));
  field.emplace_back(ext);
  return DVariety(ext, x.variety().rename_into(ext), std::move(field));
}

Ideal graph_ideal(const DVariety& x, const RatFunction& f) {
  require_same_ring(x.ring(), f.ring(), "graph_ideal");
  const DVariety ext = with_inert_coordinate(x);
  const Ring& ring = ext.ring();
  const RatPoly z = RatPoly::variable(ring, ring.size() - 1);
  const RatPoly p = f.numerator().rename_into(ring);
  const RatPoly q = f.denominator().rename_into(ring);
  Ideal g = ext.variety().with({q * z - p});
  return saturate(g, q);
}

namespace {

void require_denominator_nonzero(const DVariety& x, const RatFunction& f) {
  if (x.variety().contains(f.denominator()))
    throw ZeroDenominator("denominator " + f.denominator().to_string() + " vanishes on the variety");
}

}  // namespace

bool is_first_integral(const DVariety& x, const RatFunction& f) {
  require_same_ring(x.ring(), f.ring(), "is_first_integral");
  require_denominator_nonzero(x, f);
  const RatPoly& p = f.numerator();
  const RatPoly& q = f.denominator();
  return normal_form(derive(x, p) * q - p * derive(x, q), x.variety()).is_zero();
}

bool is_first_integral_via_graph(const DVariety& x, const RatFunction& f) {
  require_same_ring(x.ring(), f.ring(), "is_first_integral_via_graph");
  require_denominator_nonzero(x, f);
  return is_invariant(with_inert_coordinate(x), graph_ideal(x, f));
}

bool is_constant_on(const DVariety& x, const RatFunction& f) {
  require_same_ring(x.ring(), f.ring(), "is_constant_on");
  require_denominator_nonzero(x, f);
  const RatPoly p = normal_form(f.numerator(), x.variety());
  const RatPoly q = normal_form(f.denominator(), x.variety());
  if (p.is_zero()) return true;
  // p = c q for a rational c: compare after scaling by leading coefficients.
  if (p.leading_monomial() != q.leading_monomial()) return false;
  return p * q.leading_coefficient() == q * p.leading_coefficient();
}

Ideal indeterminacy_locus(const DVariety& x, const RatFunction& f) {
  require_same_ring(x.ring(), f.ring(), "indeterminacy_locus");
  return x.variety().with({f.numerator(), f.denominator()});
}

bool visibly_reducible(const RatPoly& g) {
  if (g.is_zero() || g.is_constant()) return false;
  const std::size_t n = g.ring().size();
  // Monomial factor.
  Monomial common(g.terms().begin()->first);
  for (const auto& [m, c] : g.terms())
    for (std::size_t i = 0; i < n; ++i) common[i] = std::min(common[i], m[i]);
  if (!common.is_one() && (g.term_count() > 1 || common.total_degree() > 1)) return true;
  // Repeated factor.
  for (std::size_t i = 0; i < n; ++i)
    if (g.involves(i) && !gcd(g, g.derivative(i)).is_constant()) return true;
  // Univariate with a rational root.
  std::size_t involved = 0, var = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (g.involves(i)) {
      ++involved;
      var = i;
    }
  if (involved == 1 && g.total_degree() >= 2 && !rational_roots(UniPoly::from_poly(g, var)).empty()) return true;
  return false;
}

std::vector<Ideal> invariant_components(const DVariety& x, const Ideal& z, const std::vector<RatPoly>& hints) {
  require_same_ring(x.ring(), z.ring(), "invariant_components");
  if (!is_invariant(x, z)) throw NotInvariant("ideal " + z.to_string() + " is not invariant");
  if (hints.empty()) {
    for (const auto& g : z.generators())
      if (visibly_reducible(g))
        throw MissingHints("generator " + g.to_string() + " is visibly reducible; supply component hints");
    return {z};
  }
  std::vector<Ideal> out;
  for (const auto& h : hints) {
    Ideal component(x.ring(), z.with({h}).basis());
    if (component.is_unit()) throw InvalidArgument("hint " + h.to_string() + " does not meet Z");
    if (!is_invariant(x, component))
      throw NotInvariant("component " + component.to_string() + " is not invariant");
    out.push_back(std::move(component));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Disintegration

std::string to_string(DisintegrationStatus s) {
  switch (s) {
    case DisintegrationStatus::Witnessed: return "Witnessed";
    case DisintegrationStatus::Refuted: return "Refuted";
    case DisintegrationStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DisintegrationVerdict disintegration_witness(const DVariety& x, int n, const Ideal& z) {
  if (n < 3) throw InvalidArgument("disintegration witness needs n >= 3");
  const DVariety power = product(x, n);
  require_same_ring(power.ring(), z.ring(), "disintegration_witness");
  if (!is_invariant(power, z)) throw NotInvariant("Z is not invariant under the product field");
  const Ideal full = z + power.variety();
  const std::size_t d = x.dimension();

  auto copy_vars = [&](std::initializer_list<int> copies) {
    std::vector<std::size_t> vars;
    for (int k : copies)
      for (std::size_t i = 0; i < d; ++i) vars.push_back(product_index(x, k, i));
    return vars;
  };

  for (int k = 0; k < n; ++k) {
    const auto vars = copy_vars({k});
    std::vector<RatPoly> factor_gens;
    for (const auto& g : power.variety().generators()) {
      bool inside = true;
      for (std::size_t v = 0; v < power.ring().size() && inside; ++v)
        if (g.involves(v) && std::find(vars.begin(), vars.end(), v) == vars.end()) inside = false;
      if (inside) factor_gens.push_back(g);
    }
    const Ideal factor(power.ring(), std::move(factor_gens));
    if (!factor.contains(eliminate(full, vars)))
      throw NotGenericallyProjecting("Z does not project dominantly onto factor " + std::to_string(k + 1));
  }

  DisintegrationVerdict verdict;
  Ideal pullbacks = power.variety();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Ideal zij = eliminate(full, copy_vars({i, j}));
      pullbacks = pullbacks + zij;
      verdict.pair_ideals.emplace(std::make_pair(i + 1, j + 1), std::move(zij));
    }
  }
  verdict.contained = full.contains(pullbacks);
  verdict.dim_pullbacks = variety_dimension(pullbacks);
  verdict.dim_z = variety_dimension(full);
  if (!verdict.contained) {
    verdict.status = DisintegrationStatus::Refuted;
  } else if (verdict.dim_pullbacks == verdict.dim_z) {
    verdict.status = DisintegrationStatus::Witnessed;
  } else {
    verdict.status = DisintegrationStatus::Inconclusive;
  }
  return verdict;
}

}  // namespace dtk
