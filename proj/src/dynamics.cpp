#include "dtk/dynamics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dtk/errors.hpp"

namespace dtk {

// ---------------------------------------------------------------------------
// Torus

FreqVector::FreqVector(std::vector<std::string> basis, RatMatrix coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (basis_.empty()) throw InvalidArgument("FreqVector: empty basis");
  if (coords_.cols() == 0) throw InvalidArgument("FreqVector: torus dimension must be at least 1");
  if (coords_.rows() != basis_.size()) throw InvalidArgument("FreqVector: one coordinate row per basis symbol");
}

FreqVector FreqVector::rational(const std::vector<Rat>& w) {
  RatMatrix m(1, w.size());
  for (std::size_t i = 0; i < w.size(); ++i) m(0, i) = w[i];
  return FreqVector({"1"}, std::move(m));
}

TorusVerdict torus_is_transitive(const FreqVector& w) {
  // A rational relation scales to an integer one, so Z-independence is
  // triviality of the rational kernel.
  const auto kernel = nullspace(w.coords());
  if (kernel.empty()) return {true, {}};
  return {false, primitive_integer_vector(kernel.front())};
}

TorusVerdict torus_is_weakly_mixing(const FreqVector& w) {
  const RatMatrix& c = w.coords();
  const std::size_t n = c.cols();
  RatMatrix doubled(c.rows(), 2 * n);
  for (std::size_t r = 0; r < c.rows(); ++r)
    for (std::size_t k = 0; k < n; ++k) doubled(r, k) = doubled(r, n + k) = c(r, k);
  return torus_is_transitive(FreqVector(w.basis(), std::move(doubled)));
}

// ---------------------------------------------------------------------------
// Circle arcs

namespace {

Rat floor_div(const Rat& a, const Rat& p) {
  Integer q;
  const Rat r = a / p;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(q);
}

}  // namespace

CircleArcSet::CircleArcSet(Rat period) : period_(std::move(period)) {
  period_.canonicalize();
  if (period_ <= 0) throw InvalidArgument("CircleArcSet: period must be positive");
}

CircleArcSet::CircleArcSet(Rat period, const std::vector<std::pair<Rat, Rat>>& arcs) : CircleArcSet(std::move(period)) {
  for (const auto& [lo, hi] : arcs) add(lo, hi);
  normalize();
}

CircleArcSet CircleArcSet::whole(Rat period) {
  CircleArcSet s(std::move(period));
  s.intervals_ = {{Rat(0), s.period_}};
  s.zero_ = true;
  return s;
}

void CircleArcSet::add(Rat lo, Rat hi) {
  lo.canonicalize();
  hi.canonicalize();
  if (!(lo < hi)) throw InvalidArgument("CircleArcSet: arc needs lo < hi");
  if (hi - lo > period_) {
    *this = whole(period_);
    return;
  }
  const Rat shift = floor_div(lo, period_) * period_;
  lo -= shift;
  hi -= shift;
  if (hi <= period_) {
    intervals_.emplace_back(lo, hi);
    return;
  }
  intervals_.emplace_back(lo, period_);
  intervals_.emplace_back(Rat(0), hi - period_);
  zero_ = true;
}

void CircleArcSet::normalize() {
  std::sort(intervals_.begin(), intervals_.end());
  std::vector<std::pair<Rat, Rat>> merged;
  for (const auto& iv : intervals_) {
    if (!(iv.first < iv.second)) continue;
    if (!merged.empty() && iv.first < merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  intervals_ = std::move(merged);
}

bool CircleArcSet::is_whole() const {
  return zero_ && intervals_.size() == 1 && intervals_[0].first == 0 && intervals_[0].second == period_;
}

bool CircleArcSet::contains(const Rat& t) const {
  const Rat r = t - floor_div(t, period_) * period_;
  if (r == 0) return zero_;
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const auto& iv) { return iv.first < r && r < iv.second; });
}

std::vector<std::pair<Rat, Rat>> CircleArcSet::arcs() const {
  if (is_whole()) return {{Rat(0), 2 * period_}};
  auto out = intervals_;
  if (zero_ && out.size() >= 2) {
    // First interval starts at 0, last ends at the period: one arc through 0.
    out.back().second = period_ + out.front().second;
    out.erase(out.begin());
  }
  return out;
}

CircleArcSet CircleArcSet::unite(const CircleArcSet& o) const {
  if (o.period_ != period_) throw InvalidArgument("CircleArcSet: periods differ");
  CircleArcSet s = *this;
  s.intervals_.insert(s.intervals_.end(), o.intervals_.begin(), o.intervals_.end());
  s.zero_ = zero_ || o.zero_;
  s.normalize();
  return s;
}

CircleArcSet CircleArcSet::intersect(const CircleArcSet& o) const {
  if (o.period_ != period_) throw InvalidArgument("CircleArcSet: periods differ");
  CircleArcSet s(period_);
  for (const auto& a : intervals_)
    for (const auto& b : o.intervals_) {
      const Rat lo = std::max(a.first, b.first), hi = std::min(a.second, b.second);
      if (lo < hi) s.intervals_.emplace_back(lo, hi);
    }
  s.zero_ = zero_ && o.zero_;
  s.normalize();
  return s;
}

CircleArcSet CircleArcSet::reflect() const {
  CircleArcSet s(period_);
  for (const auto& [lo, hi] : intervals_) s.intervals_.emplace_back(period_ - hi, period_ - lo);
  s.zero_ = zero_;
  s.normalize();
  return s;
}

bool CircleArcSet::subset_of(const CircleArcSet& o) const {
  if (o.period_ != period_) throw InvalidArgument("CircleArcSet: periods differ");
  if (zero_ && !o.zero_) return false;
  return std::all_of(intervals_.begin(), intervals_.end(), [&](const auto& a) {
    return std::any_of(o.intervals_.begin(), o.intervals_.end(),
                       [&](const auto& b) { return b.first <= a.first && a.second <= b.second; });
  });
}

std::string CircleArcSet::to_string() const {
  const std::string mod = " mod " + period_.get_str();
  if (empty()) return "{}";
  if (is_whole()) return "whole circle" + mod;
  std::string s;
  for (const auto& [lo, hi] : arcs()) {
    if (!s.empty()) s += " u ";
    if (hi > period_)
      s += "(" + Rat(lo - period_).get_str() + ", " + Rat(hi - period_).get_str() + ")";
    else
      s += "(" + lo.get_str() + ", " + hi.get_str() + ")";
  }
  return s + mod;
}

CircleArcSet circle_NUV(const CircleArcSet& u, const CircleArcSet& v) {
  if (u.period() != v.period()) throw InvalidArgument("circle_NUV: periods differ");
  if (u.empty() || v.empty()) throw EmptyInput("circle_NUV: U and V must be nonempty");
  if (u.is_whole() || v.is_whole()) return CircleArcSet::whole(u.period());
  std::vector<std::pair<Rat, Rat>> shifts;
  // x in (u1, u2) and x + t in (v1, v2) exactly when t in (v1 - u2, v2 - u1).
  for (const auto& [u1, u2] : u.arcs())
    for (const auto& [v1, v2] : v.arcs()) shifts.emplace_back(v1 - u2, v2 - u1);
  return CircleArcSet(u.period(), shifts);
}

std::optional<WeakMixingRefutation> circle_weak_mixing_refutation(const CircleArcSet& u1, const CircleArcSet& v1,
                                                                  const CircleArcSet& u2, const CircleArcSet& v2) {
  CircleArcSet n1 = circle_NUV(u1, v1), n2 = circle_NUV(u2, v2);
  if (!n1.intersect(n2).empty()) return std::nullopt;
  return WeakMixingRefutation{u1, v1, u2, v2, std::move(n1), std::move(n2)};
}

// ---------------------------------------------------------------------------
// Numeric orbits

NumericField::NumericField(const std::vector<RatPoly>& components)
    : dim_(components.empty() ? 0 : components.front().ring().size()) {
  for (const auto& c : components) {
    std::vector<Term> terms;
    for (const auto& [m, k] : c.terms()) {
      std::vector<int> exps(m.size());
      for (std::size_t v = 0; v < m.size(); ++v) exps[v] = m[v];
      terms.push_back({std::move(exps), k.get_d()});
    }
    comps_.push_back(std::move(terms));
  }
}

void NumericField::evaluate(const double* x, double* out) const {
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    double acc = 0;
    for (const auto& t : comps_[i]) {
      double v = t.coeff;
      for (std::size_t k = 0; k < t.exps.size(); ++k)
        for (int e = 0; e < t.exps[k]; ++e) v *= x[k];
      acc += v;
    }
    out[i] = acc;
  }
}

OrbitSample integrate_orbit(const DVariety& x, const std::vector<Rat>& x0, double step, int n_steps) {
  const std::size_t n = x.dimension();
  if (x0.size() != n) throw InvalidArgument("integrate_orbit: starting point has the wrong dimension");
  if (!(step > 0)) throw InvalidArgument("integrate_orbit: step must be positive");
  if (n_steps < 0) throw InvalidArgument("integrate_orbit: negative step count");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x0[i].get_d();
  for (const auto& g : x.variety().generators())
    if (std::abs(g.evaluate(std::span<const double>(y))) > 1e-12)
      throw InvalidArgument("integrate_orbit: starting point is not on the variety");

  const NumericField f(x.field());
  OrbitSample s;
  s.step = step;
  s.times.reserve(n_steps + 1);
  s.points.reserve(n_steps + 1);
  s.times.push_back(0);
  s.points.push_back(y);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (int i = 1; i <= n_steps; ++i) {
    f.evaluate(y.data(), k1.data());
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * step * k1[j];
    f.evaluate(tmp.data(), k2.data());
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + 0.5 * step * k2[j];
    f.evaluate(tmp.data(), k3.data());
    for (std::size_t j = 0; j < n; ++j) tmp[j] = y[j] + step * k3[j];
    f.evaluate(tmp.data(), k4.data());
    for (std::size_t j = 0; j < n; ++j) {
      y[j] += step / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      if (!std::isfinite(y[j]) || std::abs(y[j]) > kOverflowBound) {
        std::ostringstream msg;
        msg << "integrate_orbit: coordinate " << j + 1 << " left [-1e12, 1e12] at t = " << i * step;
        throw NumericOverflow(msg.str());
      }
    }
    s.times.push_back(i * step);
    s.points.push_back(y);
  }
  return s;
}

std::vector<OrbitSample> integrate_orbits(const DVariety& x, const std::vector<std::vector<Rat>>& starts, double step,
                                          int n_steps, Execution exec) {
  std::vector<OrbitSample> out(starts.size());
  for_each_index(starts.size(), exec, [&](std::size_t i) { out[i] = integrate_orbit(x, starts[i], step, n_steps); });
  return out;
}

double invariance_drift(const OrbitSample& sample, const Ideal& z, Execution exec) {
  const NumericField g(z.generators());
  const std::size_t m = z.generators().size();
  std::vector<double> per_point(sample.points.size(), 0.0);
  for_each_index(sample.points.size(), exec, [&](std::size_t i) {
    std::vector<double> vals(m);
    g.evaluate(sample.points[i].data(), vals.data());
    double worst = 0;
    for (double v : vals) worst = std::max(worst, std::abs(v));
    per_point[i] = worst;
  });
  double worst = 0;
  for (double v : per_point) worst = std::max(worst, v);
  return worst;
}

std::vector<std::vector<double>> evaluation_matrix(const std::vector<std::vector<double>>& points, int max_degree,
                                                   Execution exec) {
  if (points.empty()) return {};
  const std::size_t n = points.front().size();
  const auto monos = monomials_up_to(n, max_degree);
  std::vector<std::vector<double>> rows(points.size(), std::vector<double>(monos.size()));
  for_each_index(points.size(), exec, [&](std::size_t i) {
    const auto& p = points[i];
    if (p.size() != n) throw InvalidArgument("evaluation_matrix: points of differing dimension");
    for (std::size_t j = 0; j < monos.size(); ++j) {
      double v = 1;
      for (std::size_t k = 0; k < n; ++k)
        for (int e = 0; e < monos[j][k]; ++e) v *= p[k];
      rows[i][j] = v;
    }
  });
  return rows;
}

std::string DensityResult::relation_text(const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << std::setprecision(6);
  bool first = true;
  for (std::size_t j = 0; j < relation.size(); ++j) {
    const double c = relation[j];
    if (std::abs(c) < 1e-9) continue;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    const bool constant = monomials[j].total_degree() == 0;
    if (constant || std::abs(std::abs(c) - 1) > 1e-9) os << std::abs(c) << (constant ? "" : "*");
    bool first_var = true;
    for (std::size_t k = 0; k < monomials[j].size(); ++k) {
      if (monomials[j][k] == 0) continue;
      if (!first_var) os << "*";
      os << (k < names.size() ? names[k] : "x" + std::to_string(k + 1));
      if (monomials[j][k] > 1) os << "^" << monomials[j][k];
      first_var = false;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

DensityResult zariski_density_up_to_degree(const OrbitSample& sample, int max_degree, double tolerance,
                                           Execution exec) {
  if (max_degree < 0) throw InvalidArgument("zariski_density_up_to_degree: negative degree");
  const std::size_t n = sample.points.empty() ? 0 : sample.points.front().size();
  DensityResult out;
  out.degree = max_degree;
  out.monomials = monomials_up_to(n, max_degree);
  const std::size_t cols = out.monomials.size();
  if (sample.points.size() < 2 * cols)
    throw InsufficientSamples("zariski_density_up_to_degree: need at least " + std::to_string(2 * cols) +
                              " points, have " + std::to_string(sample.points.size()));
  const auto rows = evaluation_matrix(sample.points, max_degree, exec);
  Eigen::MatrixXd a(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = rows[i][j];
  Eigen::VectorXd norms(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    norms(j) = a.col(j).norm();
    if (norms(j) > 0) a.col(j) /= norms(j);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  out.sigma_min = svd.singularValues()(cols - 1);
  if (out.sigma_min > tolerance) {
    out.dense = true;
    return out;
  }
  const Eigen::VectorXd v = svd.matrixV().col(cols - 1);
  out.relation.resize(cols);
  double biggest = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    out.relation[j] = norms(j) > 0 ? v(j) / norms(j) : v(j);
    biggest = std::max(biggest, std::abs(out.relation[j]));
  }
  double sign = 1;
  for (double c : out.relation)
    if (std::abs(c) > 1e-9 * biggest) {
      sign = c < 0 ? -1 : 1;
      break;
    }
  for (double& c : out.relation) c *= sign / biggest;
  for (const auto& r : rows) {
    double acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc += out.relation[j] * r[j];
    out.residual = std::max(out.residual, std::abs(acc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

void write_orbit_csv(std::ostream& os, const OrbitSample& sample) {
  const std::size_t n = sample.points.empty() ? 0 : sample.points.front().size();
  os << "t";
  for (std::size_t k = 1; k <= n; ++k) os << ",x" << k;
  os << "\n" << std::setprecision(17);
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    os << sample.times[i];
    for (double v : sample.points[i]) os << "," << v;
    os << "\n";
  }
}

OrbitSample read_orbit_csv(std::istream& is) {
  std::string line;
  std::size_t offset = 0;
  if (!std::getline(is, line)) throw EmptyInput("read_orbit_csv: no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.empty() || header.front() != "t") throw SyntaxError("read_orbit_csv: header must start with t", 0);
  const std::size_t n = header.size() - 1;
  offset += line.size() + 1;
  OrbitSample s;
  s.method = "csv";
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      offset += 1;
      continue;
    }
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      const std::string cell = line.substr(pos, comma - pos);
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (cell.empty() || used != cell.size()) throw SyntaxError("read_orbit_csv: bad number '" + cell + "'", offset + pos);
      vals.push_back(v);
      pos = comma + 1;
    }
    if (vals.size() != n + 1) throw SyntaxError("read_orbit_csv: expected " + std::to_string(n + 1) + " fields", offset);
    if (!s.times.empty() && !(vals[0] > s.times.back()))
      throw InvalidArgument("read_orbit_csv: times must strictly increase");
    s.times.push_back(vals[0]);
    s.points.emplace_back(vals.begin() + 1, vals.end());
    offset += line.size() + 1;
  }
  if (s.times.size() >= 2) s.step = s.times[1] - s.times[0];
  return s;
}

}  // namespace dtk
