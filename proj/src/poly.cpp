#include "dtk/poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dtk {

std::string to_string(const Rat& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, int power) {
  Monomial m(nvars);
  m.exps_[index] = power;
  return m;
}

int Monomial::total_degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], other.exps_[i]);
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const noexcept {
  const int da = a.total_degree();
  const int db = b.total_degree();
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
  for (std::size_t i = 0; i < names_->size(); ++i)
    for (std::size_t j = i + 1; j < names_->size(); ++j)
      if ((*names_)[i] == (*names_)[j]) throw InvalidArgument("duplicate variable '" + (*names_)[i] + "'");
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw UnknownVariable(std::string(name), 0);
  return *i;
}

Ring Ring::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> all = *names_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Ring(std::move(all));
}

std::string Ring::fresh_name(const std::string& base) const {
  std::string candidate = base;
  for (int k = 0; index_of(candidate); ++k) candidate = base + "_" + std::to_string(k);
  return candidate;
}

void require_same_ring(const Ring& a, const Ring& b, const char* where) {
  if (!(a == b)) throw RingMismatch(std::string(where) + ": operands live in different rings");
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(Ring ring, const Rat& c) : ring_(std::move(ring)) {
  if (c != 0) terms_.emplace(Monomial(ring_.size()), c);
}

RatPoly::RatPoly(Ring ring, TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
}

RatPoly RatPoly::variable(const Ring& ring, std::size_t index) {
  return monomial(ring, Monomial::variable(ring.size(), index));
}

RatPoly RatPoly::variable(const Ring& ring, std::string_view name) {
  return variable(ring, ring.require_index(name));
}

RatPoly RatPoly::monomial(const Ring& ring, Monomial m, const Rat& c) {
  RatPoly p(ring);
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool RatPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat RatPoly::constant_term() const { return coefficient(Monomial(ring_.size())); }

Rat RatPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

const Monomial& RatPoly::leading_monomial() const {
  if (terms_.empty()) throw ZeroPolynomial("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rat& RatPoly::leading_coefficient() const {
  if (terms_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

int RatPoly::total_degree() const noexcept {
  return terms_.empty() ? -1 : terms_.begin()->first.total_degree();
}

int RatPoly::degree_in(std::size_t var) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

bool RatPoly::involves(std::size_t var) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(), [var](const auto& t) { return t.first[var] > 0; });
}

void RatPoly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  require_same_ring(ring_, o.ring_, "add");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  require_same_ring(ring_, o.ring_, "subtract");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RatPoly& RatPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

RatPoly RatPoly::operator-() const {
  RatPoly r(*this);
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  require_same_ring(a.ring_, b.ring_, "multiply");
  RatPoly r(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

RatPoly RatPoly::pow(unsigned e) const {
  RatPoly result(ring_, Rat(1));
  RatPoly base(*this);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

RatPoly RatPoly::derivative(std::size_t var) const {
  RatPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d(m);
    d[var] -= 1;
    r.add_term(d, c * m[var]);
  }
  return r;
}

RatPoly RatPoly::mul_monomial(const Monomial& m) const {
  RatPoly r(ring_);
  for (const auto& [t, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), t * m, c);
  return r;
}

Rat RatPoly::evaluate(std::span<const Rat> point) const {
  if (point.size() != ring_.size()) throw InvalidArgument("evaluate: point dimension mismatch");
  Rat sum = 0;
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

double RatPoly::evaluate(std::span<const double> point) const {
  if (point.size() != ring_.size()) throw InvalidArgument("evaluate: point dimension mismatch");
  double sum = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

RatPoly RatPoly::substitute(std::size_t var, const RatPoly& value) const {
  require_same_ring(ring_, value.ring_, "substitute");
  RatPoly r(ring_);
  std::vector<RatPoly> powers{RatPoly(ring_, Rat(1))};
  for (const auto& [m, c] : terms_) {
    while (static_cast<int>(powers.size()) <= m[var]) powers.push_back(powers.back() * value);
    Monomial rest(m);
    rest[var] = 0;
    r += powers[m[var]].mul_monomial(rest) * c;
  }
  return r;
}

RatPoly RatPoly::substitute(std::size_t var, const Rat& value) const {
  RatPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    Monomial rest(m);
    rest[var] = 0;
    Rat factor = c;
    for (int k = 0; k < m[var]; ++k) factor *= value;
    r.add_term(rest, factor);
  }
  return r;
}

RatPoly RatPoly::map_to(const Ring& target, std::span<const std::size_t> var_map) const {
  if (var_map.size() != ring_.size()) throw InvalidArgument("map_to: variable map has wrong length");
  RatPoly r(target);
  for (const auto& [m, c] : terms_) {
    Monomial t(target.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t[var_map[i]] += m[i];
    r.add_term(t, c);
  }
  return r;
}

RatPoly RatPoly::rename_into(const Ring& target) const {
  std::vector<std::size_t> var_map(ring_.size(), 0);
  for (std::size_t i = 0; i < ring_.size(); ++i) {
    auto j = target.index_of(ring_.name(i));
    if (j) {
      var_map[i] = *j;
    } else if (involves(i)) {
      throw RingMismatch("variable '" + ring_.name(i) + "' missing from target ring");
    }
  }
  return map_to(target, var_map);
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  RatPoly r(*this);
  r *= Rat(1) / leading_coefficient();
  return r;
}

RatPoly RatPoly::primitive() const {
  if (is_zero()) return *this;
  Integer den = 1;
  Integer num = 0;
  for (const auto& [m, c] : terms_) {
    den = lcm(den, Integer(c.get_den()));
    num = gcd(num, Integer(c.get_num()));
  }
  Rat scale(den, num);
  scale.canonicalize();
  if (leading_coefficient() < 0) scale = -scale;
  RatPoly r(*this);
  r *= scale;
  return r;
}

namespace {

void append_term(std::ostringstream& os, const Monomial& m, const Rat& c, const Ring& ring, bool first) {
  const bool negative = c < 0;
  Rat a = negative ? Rat(-c) : c;
  if (first) {
    if (negative) os << '-';
  } else {
    os << (negative ? " - " : " + ");
  }
  bool wrote = false;
  if (a != 1 || m.is_one()) {
    os << a.get_str();
    wrote = true;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (wrote) os << '*';
    os << ring.name(i);
    if (m[i] > 1) os << '^' << m[i];
    wrote = true;
  }
}

}  // namespace

std::string RatPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    append_term(os, m, c, ring_, first);
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.to_string(); }

std::optional<RatPoly> divide_exact(const RatPoly& a, const RatPoly& b) {
  require_same_ring(a.ring(), b.ring(), "divide");
  if (b.is_zero()) throw ZeroDenominator("division by the zero polynomial");
  RatPoly quotient(a.ring());
  RatPoly rem(a);
  const Monomial& lm = b.leading_monomial();
  const Rat& lc = b.leading_coefficient();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    RatPoly step = RatPoly::monomial(a.ring(), rm / lm, rem.leading_coefficient() / lc);
    rem -= step * b;
    quotient += step;
  }
  return quotient;
}

// ---------------------------------------------------------------------------
// gcd: recursive primitive PRS, eliminating one variable at a time.

namespace {

std::vector<RatPoly> coefficients_in(const RatPoly& p, std::size_t var) {
  std::vector<RatPoly> out(std::max(p.degree_in(var), 0) + 1, RatPoly(p.ring()));
  for (const auto& [m, c] : p.terms()) {
    Monomial rest(m);
    rest[var] = 0;
    out[m[var]].add_term(rest, c);
  }
  return out;
}

RatPoly content_in(const RatPoly& p, std::size_t var) {
  RatPoly g(p.ring());
  for (const auto& c : coefficients_in(p, var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

RatPoly leading_coeff_in(const RatPoly& p, std::size_t var) {
  return coefficients_in(p, var).back();
}

RatPoly pseudo_remainder(RatPoly a, const RatPoly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const RatPoly lcb = leading_coeff_in(b, var);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    const int da = a.degree_in(var);
    RatPoly lca = leading_coeff_in(a, var);
    a = a * lcb - (lca * b).mul_monomial(Monomial::variable(a.ring().size(), var, da - db));
  }
  return a;
}

RatPoly primitive_in(const RatPoly& p, std::size_t var) {
  RatPoly c = content_in(p, var);
  return *divide_exact(p, c);
}

}  // namespace

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  require_same_ring(a.ring(), b.ring(), "gcd");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return RatPoly(a.ring(), Rat(1));
  if (auto q = divide_exact(a, b)) return b.monic();
  if (auto q = divide_exact(b, a)) return a.monic();

  std::size_t var = 0;
  while (!a.involves(var) && !b.involves(var)) ++var;
  if (!a.involves(var)) return gcd(a, content_in(b, var));
  if (!b.involves(var)) return gcd(content_in(a, var), b);

  RatPoly ca = content_in(a, var);
  RatPoly cb = content_in(b, var);
  RatPoly c = gcd(ca, cb);
  RatPoly pa = *divide_exact(a, ca);
  RatPoly pb = *divide_exact(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  RatPoly g(a.ring());
  while (true) {
    RatPoly r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (!r.involves(var)) {
      g = RatPoly(a.ring(), Rat(1));
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, var).primitive();
  }
  return (c * primitive_in(g, var)).monic();
}

// ---------------------------------------------------------------------------

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  Monomial m(nvars);
  // Lexicographically descending enumeration of compositions.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, degree);
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  for (int d = degree; d >= 0; --d) {
    auto part = monomials_of_degree(nvars, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace dtk
