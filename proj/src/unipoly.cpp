#include "dtk/unipoly.hpp"

#include <algorithm>
#include <sstream>

#include "dtk/linalg.hpp"

namespace dtk {

UniPoly::UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::monomial(int degree, const Rat& c) {
  std::vector<Rat> v(degree + 1, Rat(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_poly(const RatPoly& p, std::size_t var) {
  std::vector<Rat> v(std::max(p.degree_in(var), 0) + 1, Rat(0));
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != var && m[i] != 0) throw InvalidArgument("polynomial is not univariate in " + p.ring().name(var));
    v[m[var]] += c;
  }
  return UniPoly(std::move(v));
}

Rat UniPoly::coefficient(int k) const {
  return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Rat(0);
}

const Rat& UniPoly::leading_coefficient() const {
  if (coeffs_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
  return coeffs_.back();
}

UniPoly UniPoly::derivative() const {
  std::vector<Rat> v;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v.push_back(coeffs_[k] * static_cast<long>(k));
  return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / leading_coefficient());
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return *this;
  Integer den = 1, num = 0;
  for (const auto& c : coeffs_) {
    den = lcm(den, Integer(c.get_den()));
    num = gcd(num, Integer(c.get_num()));
  }
  Rat s(den, num);
  s.canonicalize();
  if (leading_coefficient() < 0) s = -s;
  return *this * s;
}

Rat UniPoly::evaluate(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double UniPoly::evaluate(double x) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

UniPoly UniPoly::compose_scale(const Rat& c) const {
  std::vector<Rat> v(coeffs_);
  Rat p = 1;
  for (auto& a : v) {
    a *= p;
    p *= c;
  }
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) v[k] += o.coeffs_[k];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o * Rat(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const Rat& c) const {
  std::vector<Rat> v(coeffs_);
  for (auto& a : v) a *= c;
  return UniPoly(std::move(v));
}

RatPoly UniPoly::to_poly(const Ring& ring, std::size_t var) const {
  RatPoly p(ring);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    p.add_term(Monomial::variable(ring.size(), var, static_cast<int>(k)), coeffs_[k]);
  return p;
}

std::string UniPoly::to_string(const std::string& var) const {
  Ring ring({var});
  return to_poly(ring, 0).to_string();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  std::vector<Rat> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rat> quot(a.degree() - db + 1, Rat(0));
  const Rat& lc = b.leading_coefficient();
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k] == 0) continue;
    Rat f = rem[k] / lc;
    quot[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coefficients()[j];
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<SquarefreeFactor> squarefree_split(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree_split of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (p.degree() == 0) return out;
  // Yun: b = P/g, c = P'/g - b', repeatedly a_i = gcd(b, c).
  const UniPoly dp = p.derivative();
  UniPoly g = gcd(p, dp);
  UniPoly b = divmod(p, g).first;
  UniPoly c = divmod(dp, g).first;
  UniPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UniPoly a = gcd(b, d);
    if (a.degree() > 0) out.push_back({a.monic(), i});
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
  }
  return out;
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree part of the zero polynomial");
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

namespace {

/// Sylvester matrix with formal degrees da, db; coefficient vectors lowest first.
RatMatrix sylvester(const std::vector<Rat>& a, int da, const std::vector<Rat>& b, int db) {
  const int n = da + db;
  RatMatrix s(n, n);
  auto coeff = [](const std::vector<Rat>& v, int k) { return k < static_cast<int>(v.size()) ? v[k] : Rat(0); };
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) s(r, r + k) = coeff(a, da - k);
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) s(db + r, r + k) = coeff(b, db - k);
  return s;
}

}  // namespace

Rat resultant(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) throw ZeroPolynomial("resultant with the zero polynomial");
  return determinant(sylvester(a.coefficients(), a.degree(), b.coefficients(), b.degree()));
}

UniPoly resultant_x(const RatPoly& a, const RatPoly& b, std::size_t x, std::size_t y) {
  require_same_ring(a.ring(), b.ring(), "resultant_x");
  if (a.is_zero() || b.is_zero()) throw ZeroPolynomial("resultant with the zero polynomial");
  for (const auto* p : {&a, &b})
    for (std::size_t v = 0; v < p->ring().size(); ++v)
      if (v != x && v != y && p->involves(v)) throw InvalidArgument("resultant_x: extra variables present");
  const int da = a.degree_in(x);
  const int db = b.degree_in(x);
  const int bound = da * std::max(b.degree_in(y), 0) + db * std::max(a.degree_in(y), 0);

  auto coefficients_at = [&](const RatPoly& p, int dp, const Rat& y0) {
    std::vector<Rat> v(dp + 1, Rat(0));
    for (const auto& [m, c] : p.terms()) {
      Rat t = c;
      for (int k = 0; k < m[y]; ++k) t *= y0;
      v[m[x]] += t;
    }
    return v;
  };

  // Evaluate at y = 0..bound and interpolate (Newton divided differences).
  std::vector<Rat> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    Rat y0 = k;
    xs.push_back(y0);
    ys.push_back(determinant(sylvester(coefficients_at(a, da, y0), da, coefficients_at(b, db, y0), db)));
  }
  std::vector<Rat> dd = ys;
  for (std::size_t level = 1; level < dd.size(); ++level)
    for (std::size_t i = dd.size() - 1; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  UniPoly result = UniPoly::constant(dd.back());
  for (std::size_t i = dd.size() - 1; i-- > 0;) result = result * UniPoly({-xs[i], Rat(1)}) + UniPoly::constant(dd[i]);
  return result;
}

// ---------------------------------------------------------------------------
// Integer divisors (trial division, then Pollard-Brent for large cofactors).

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = v * v + c;
      return Integer(r % n);
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = x - y;
      if (diff < 0) diff = -diff;
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

std::vector<Integer> positive_divisors(const Integer& value) {
  if (value == 0) throw InvalidArgument("divisors of zero");
  Integer n = value < 0 ? Integer(-value) : value;
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 100000 && Integer(p) * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<Integer> divs{1};
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (std::size_t e = i; e < j; ++e) {
      pk *= primes[i];
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pk);
    }
    i = j;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

namespace {

Integer eval_mod(const std::vector<Integer>& c, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * x + c[k];
    acc %= m;
  }
  if (acc < 0) acc += m;
  return acc;
}

// Rational roots of a squarefree integer polynomial with f(0) != 0. A root a/b
// in lowest terms has b | lc, so lc * root is an integer k. Roots modulo a
// small prime p (not dividing lc, f squarefree mod p) are lifted by Newton
// iteration to a modulus beyond 2|k|, where k is read off and checked exactly.
std::vector<Rat> squarefree_rational_roots(const UniPoly& f) {
  const int n = f.degree();
  std::vector<Integer> c, dc;
  for (int k = 0; k <= n; ++k) c.push_back(f.coefficient(k).get_num());
  for (int k = 1; k <= n; ++k) dc.push_back(c[k] * k);
  const Integer lc = c.back();
  Integer bound = 0;  // |lc| * Cauchy bound, rounded up
  for (int k = 0; k < n; ++k) bound = std::max(bound, Integer(abs(c[k])));
  bound = 2 * (bound + abs(lc)) + 1;

  Integer p = 2;
  std::vector<Integer> roots_mod;
  for (;; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    if (lc % p == 0) continue;
    roots_mod.clear();
    bool separable = true;
    for (Integer x = 0; x < p && separable; ++x) {
      if (eval_mod(c, x, p) != 0) continue;
      if (eval_mod(dc, x, p) == 0) separable = false;
      roots_mod.push_back(x);
    }
    if (separable) break;
  }

  std::vector<Rat> out;
  for (Integer r : roots_mod) {
    Integer m = p;
    while (m <= bound) {
      m *= m;
      Integer inv;
      const Integer d = eval_mod(dc, r, m);
      mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
      r = (r - eval_mod(c, r, m) * inv) % m;
      if (r < 0) r += m;
    }
    Integer k = (lc * r) % m;
    if (k < 0) k += m;
    if (2 * k > m) k -= m;
    Rat cand(k, lc);
    cand.canonicalize();
    if (f.evaluate(cand) == 0) out.push_back(cand);
  }
  return out;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("rational_roots of the zero polynomial");
  std::vector<RationalRoot> out;
  std::vector<Rat> c = p.coefficients();
  int zero_mult = 0;
  while (c.size() > 1 && c.front() == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult) out.push_back({Rat(0), zero_mult});
  const UniPoly rest(std::move(c));
  if (rest.degree() <= 0) return out;
  for (const auto& f : squarefree_split(rest)) {
    if (f.factor.degree() < 1) continue;
    for (const Rat& r : squarefree_rational_roots(f.factor.primitive())) out.push_back({r, f.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const RationalRoot& a, const RationalRoot& b) { return a.root < b.root; });
  return out;
}

}  // namespace dtk
