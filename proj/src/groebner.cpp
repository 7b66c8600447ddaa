#include "dtk/groebner.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace dtk {

// ---------------------------------------------------------------------------
// Orders

MonomialOrder MonomialOrder::elimination(const Ring& ring, const std::vector<std::size_t>& keep) {
  MonomialOrder o{OrderKind::Lex, {}};
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) o.precedence.push_back(i);
  for (std::size_t i = 0; i < ring.size(); ++i)
    if (std::find(keep.begin(), keep.end(), i) != keep.end()) o.precedence.push_back(i);
  return o;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  auto var = [this](std::size_t k) { return precedence.empty() ? k : precedence[k]; };
  if (kind != OrderKind::Lex) {
    const int da = a.total_degree();
    const int db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
  }
  if (kind == OrderKind::GrevLex) {
    for (std::size_t k = n; k-- > 0;) {
      const std::size_t v = var(k);
      if (a[v] != b[v]) return a[v] > b[v] ? -1 : 1;
    }
    return 0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = var(k);
    if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Limits

namespace {

GroebnerLimits initial_limits() {
  GroebnerLimits l;
  if (const char* env = std::getenv("DTOOLKIT_MAX_DEGREE")) {
    const int d = std::atoi(env);
    if (d > 0) l.max_degree = d;
  }
  return l;
}

std::mutex& limits_mutex() {
  static std::mutex m;
  return m;
}

GroebnerLimits& limits_storage() {
  static GroebnerLimits l = initial_limits();
  return l;
}

std::atomic<std::size_t> g_pairs{0};

}  // namespace

GroebnerLimits GroebnerLimits::defaults() {
  std::lock_guard lock(limits_mutex());
  return limits_storage();
}

void GroebnerLimits::set_defaults(const GroebnerLimits& limits) {
  std::lock_guard lock(limits_mutex());
  limits_storage() = limits;
}

std::size_t groebner_pair_counter() { return g_pairs.load(); }

// ---------------------------------------------------------------------------
// Sparse working representation: terms sorted by decreasing order.

namespace {

struct Term {
  Monomial m;
  Rat c;
};
using Terms = std::vector<Term>;

Terms to_terms(const RatPoly& p, const MonomialOrder& order) {
  Terms t;
  t.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) t.push_back({m, c});
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.compare(a.m, b.m) > 0; });
  return t;
}

RatPoly from_terms(const Ring& ring, const Terms& t) {
  RatPoly::TermMap map;
  for (const auto& term : t) map.emplace(term.m, term.c);
  return RatPoly(ring, std::move(map));
}

void make_monic(Terms& t) {
  if (t.empty() || t.front().c == 1) return;
  const Rat inv = Rat(1) / t.front().c;
  for (auto& term : t) term.c *= inv;
}

/// h - coef * mono * g, starting from h[from..].
Terms sub_scaled(const Terms& h, std::size_t from, const Rat& coef, const Monomial& mono, const Terms& g,
                 const MonomialOrder& order) {
  Terms out;
  out.reserve(h.size() - from + g.size());
  std::size_t i = from, j = 0;
  while (i < h.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(h[i++]);
      continue;
    }
    Monomial gm = g[j].m * mono;
    if (i == h.size()) {
      out.push_back({std::move(gm), -coef * g[j].c});
      ++j;
      continue;
    }
    const int cmp = order.compare(h[i].m, gm);
    if (cmp > 0) {
      out.push_back(h[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(gm), -coef * g[j].c});
      ++j;
    } else {
      Rat c = h[i].c - coef * g[j].c;
      if (c != 0) out.push_back({std::move(gm), std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

Terms full_reduce(Terms h, const std::vector<const Terms*>& basis, const MonomialOrder& order) {
  Terms rem;
  std::size_t pos = 0;
  while (pos < h.size()) {
    const Term& lt = h[pos];
    const Terms* reducer = nullptr;
    for (const Terms* g : basis) {
      if (g->front().m.divides(lt.m)) {
        reducer = g;
        break;
      }
    }
    if (!reducer) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    const Rat coef = lt.c / reducer->front().c;
    const Monomial mono = lt.m / reducer->front().m;
    h = sub_scaled(h, pos, coef, mono, *reducer, order);
    pos = 0;
  }
  return rem;
}

Terms s_polynomial(const Terms& f, const Terms& g, const MonomialOrder& order) {
  const Monomial l = f.front().m.lcm(g.front().m);
  const Monomial mf = l / f.front().m;
  const Monomial mg = l / g.front().m;
  Terms scaled_f;
  scaled_f.reserve(f.size());
  const Rat inv = Rat(1) / f.front().c;
  for (const auto& t : f) scaled_f.push_back({t.m * mf, t.c * inv});
  return sub_scaled(scaled_f, 0, Rat(1) / g.front().c, mg, g, order);
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  int degree;
};

class Buchberger {
 public:
  Buchberger(const MonomialOrder& order, const GroebnerLimits& limits) : order_(order), limits_(limits) {}

  void add(Terms h) {
    make_monic(h);
    const std::size_t t = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    const Monomial& lh = polys_[t].front().m;

    std::vector<Pair> c;
    for (std::size_t g = 0; g < t; ++g)
      if (active_[g]) c.push_back(make_pair(g, t));
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = coprime(polys_[p.i].front().m, lh);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q)
          if (c[q].lcm.divides(p.lcm)) keep = false;
        for (const Pair& q : d)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> kept;
    for (const Pair& p : pairs_) {
      const bool drop = lh.divides(p.lcm) && !(polys_[p.i].front().m.lcm(lh) == p.lcm) &&
                        !(polys_[p.j].front().m.lcm(lh) == p.lcm);
      if (!drop) kept.push_back(p);
    }
    for (const Pair& p : d)
      if (!coprime(polys_[p.i].front().m, lh)) kept.push_back(p);
    pairs_ = std::move(kept);
    for (std::size_t g = 0; g < t; ++g)
      if (active_[g] && lh.divides(polys_[g].front().m)) active_[g] = false;
  }

  bool run() {
    std::size_t processed = 0;
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.lcm != b.lcm) return a.lcm < b.lcm;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
      });
      Pair p = *best;
      pairs_.erase(best);
      if (++processed > limits_.max_pairs)
        throw ResourceLimit("Groebner basis: more than " + std::to_string(limits_.max_pairs) + " S-pairs");
      if (p.degree > limits_.max_degree)
        throw ResourceLimit("Groebner basis: S-pair degree " + std::to_string(p.degree) + " exceeds cap " +
                            std::to_string(limits_.max_degree));
      g_pairs.fetch_add(1, std::memory_order_relaxed);
      Terms s = s_polynomial(polys_[p.i], polys_[p.j], order_);
      Terms r = full_reduce(std::move(s), active_basis(), order_);
      if (r.empty()) continue;
      if (r.front().m.is_one()) return true;  // unit ideal
      add(std::move(r));
    }
    return false;
  }

  std::vector<Terms> reduced_basis() const {
    std::vector<const Terms*> minimal;
    for (std::size_t g = 0; g < polys_.size(); ++g)
      if (active_[g]) minimal.push_back(&polys_[g]);
    std::vector<Terms> out;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<const Terms*> others;
      for (std::size_t q = 0; q < minimal.size(); ++q)
        if (q != k) others.push_back(minimal[q]);
      Terms head{minimal[k]->front()};
      Terms tail(minimal[k]->begin() + 1, minimal[k]->end());
      Terms red = full_reduce(std::move(tail), others, order_);
      head.insert(head.end(), red.begin(), red.end());
      make_monic(head);
      out.push_back(std::move(head));
    }
    std::sort(out.begin(), out.end(),
              [&](const Terms& a, const Terms& b) { return order_.compare(a.front().m, b.front().m) < 0; });
    return out;
  }

  std::vector<const Terms*> active_basis() const {
    std::vector<const Terms*> out;
    for (std::size_t g = 0; g < polys_.size(); ++g)
      if (active_[g]) out.push_back(&polys_[g]);
    return out;
  }

 private:
  Pair make_pair(std::size_t i, std::size_t j) const {
    Monomial l = polys_[i].front().m.lcm(polys_[j].front().m);
    const int d = l.total_degree();
    return {i, j, std::move(l), d};
  }

  MonomialOrder order_;
  GroebnerLimits limits_;
  std::vector<Terms> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<RatPoly> groebner(const Ideal& ideal, const MonomialOrder& order, const GroebnerLimits& limits) {
  const Ring& ring = ideal.ring();
  if (ring.size() == 0) {
    for (const auto& g : ideal.generators())
      if (!g.is_zero()) return {RatPoly(ring, Rat(1))};
    return {};
  }
  Buchberger engine(order, limits);
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    if (g.total_degree() > limits.max_degree)
      throw ResourceLimit("Groebner basis: generator degree exceeds cap " + std::to_string(limits.max_degree));
    Terms t = full_reduce(to_terms(g, order), engine.active_basis(), order);
    if (t.empty()) continue;
    if (t.front().m.is_one()) return {RatPoly(ring, Rat(1))};
    engine.add(std::move(t));
  }
  if (engine.run()) return {RatPoly(ring, Rat(1))};
  std::vector<RatPoly> out;
  for (const auto& t : engine.reduced_basis()) out.push_back(from_terms(ring, t));
  return out;
}

RatPoly reduce(const RatPoly& f, const std::vector<RatPoly>& basis, const MonomialOrder& order) {
  std::vector<Terms> storage;
  storage.reserve(basis.size());
  for (const auto& g : basis) {
    require_same_ring(f.ring(), g.ring(), "reduce");
    if (!g.is_zero()) storage.push_back(to_terms(g, order));
  }
  std::vector<const Terms*> ptrs;
  for (const auto& t : storage) ptrs.push_back(&t);
  return from_terms(f.ring(), full_reduce(to_terms(f, order), ptrs, order));
}

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(Ring ring, std::vector<RatPoly> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    require_same_ring(ring_, g.ring(), "ideal generator");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

const std::vector<RatPoly>& Ideal::basis(const MonomialOrder& order) const {
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->bases.find(order);
  if (it == cache_->bases.end()) it = cache_->bases.emplace(order, groebner(*this, order)).first;
  return it->second;
}

bool Ideal::contains(const RatPoly& f) const { return normal_form(f, *this).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  return std::all_of(other.generators().begin(), other.generators().end(),
                     [this](const RatPoly& g) { return contains(g); });
}

bool Ideal::is_unit() const {
  const auto& b = basis();
  return b.size() == 1 && b.front().is_constant();
}

bool Ideal::is_zero() const { return generators_.empty(); }

Ideal Ideal::operator+(const Ideal& other) const {
  require_same_ring(ring_, other.ring_, "ideal sum");
  std::vector<RatPoly> gens = generators_;
  gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::with(const std::vector<RatPoly>& extra) const {
  std::vector<RatPoly> gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::rename_into(const Ring& target) const {
  std::vector<RatPoly> gens;
  for (const auto& g : generators_) gens.push_back(g.rename_into(target));
  return Ideal(target, std::move(gens));
}

std::string Ideal::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < generators_.size(); ++i) os << (i ? ", " : "") << generators_[i];
  if (generators_.empty()) os << '0';
  os << '>';
  return os.str();
}

RatPoly normal_form(const RatPoly& f, const Ideal& ideal) {
  require_same_ring(f.ring(), ideal.ring(), "normal_form");
  if (ideal.is_zero() || f.is_zero()) return f;
  return reduce(f, ideal.basis(), MonomialOrder::grevlex());
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& keep) {
  for (std::size_t k : keep)
    if (k >= ideal.ring().size()) throw InvalidArgument("eliminate: variable index out of range");
  const MonomialOrder order = MonomialOrder::elimination(ideal.ring(), keep);
  std::vector<RatPoly> kept;
  for (const auto& g : ideal.basis(order)) {
    bool only_kept = true;
    for (std::size_t v = 0; v < ideal.ring().size() && only_kept; ++v)
      if (g.involves(v) && std::find(keep.begin(), keep.end(), v) == keep.end()) only_kept = false;
    if (only_kept) kept.push_back(g);
  }
  return Ideal(ideal.ring(), std::move(kept));
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& keep) {
  std::vector<std::size_t> idx;
  for (const auto& name : keep) idx.push_back(ideal.ring().require_index(name));
  return eliminate(ideal, idx);
}

Monomial leading_monomial(const RatPoly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw ZeroPolynomial("leading monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (!best || order.compare(m, *best) > 0) best = &m;
  return *best;
}

namespace {

std::uint64_t support_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

void search_independent(std::size_t var, std::size_t n, std::uint64_t current, int size,
                        const std::vector<std::uint64_t>& supports, std::uint64_t& best, int& best_size) {
  if (size + static_cast<int>(n - var) <= best_size) return;
  if (var == n) {
    best = current;
    best_size = size;
    return;
  }
  const std::uint64_t with = current | (std::uint64_t{1} << var);
  const bool independent = std::none_of(supports.begin(), supports.end(),
                                        [with](std::uint64_t s) { return (s & ~with) == 0; });
  if (independent) search_independent(var + 1, n, with, size + 1, supports, best, best_size);
  search_independent(var + 1, n, current, size, supports, best, best_size);
}

}  // namespace

std::vector<std::size_t> maximal_independent_set(const Ideal& ideal) {
  const std::size_t n = ideal.ring().size();
  if (n > 64) throw ResourceLimit("dimension computation limited to 64 variables");
  if (ideal.is_unit()) throw UnitIdeal("the unit ideal has no independent set (empty variety, dimension -1)");
  std::vector<std::uint64_t> supports;
  for (const auto& g : ideal.basis()) supports.push_back(support_mask(leading_monomial(g, MonomialOrder::grevlex())));
  std::uint64_t best = 0;
  int best_size = -1;
  search_independent(0, n, 0, 0, supports, best, best_size);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best & (std::uint64_t{1} << i)) out.push_back(i);
  return out;
}

int krull_dim(const Ideal& ideal) { return static_cast<int>(maximal_independent_set(ideal).size()); }

int variety_dimension(const Ideal& ideal) { return ideal.is_unit() ? -1 : krull_dim(ideal); }

Ideal saturate(const Ideal& ideal, const RatPoly& q) {
  require_same_ring(ideal.ring(), q.ring(), "saturate");
  if (q.is_zero()) throw ZeroDenominator("saturation by zero");
  if (q.is_constant() || ideal.is_zero()) return ideal;
  const Ring& ring = ideal.ring();
  const std::string w = ring.fresh_name("w");
  const Ring ext = ring.extended({w});
  std::vector<RatPoly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.rename_into(ext));
  RatPoly wq = RatPoly::variable(ext, ring.size()) * q.rename_into(ext);
  gens.push_back(RatPoly(ext, Rat(1)) - wq);
  std::vector<std::size_t> keep(ring.size());
  std::iota(keep.begin(), keep.end(), 0);
  Ideal elim = eliminate(Ideal(ext, std::move(gens)), keep);
  std::vector<RatPoly> back;
  for (const auto& g : elim.generators()) back.push_back(g.rename_into(ring));
  return Ideal(ring, std::move(back));
}

bool same_ideal(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring(), "same_ideal");
  return a.basis() == b.basis();
}

}  // namespace dtk
