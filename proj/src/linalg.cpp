#include "dtk/linalg.hpp"

#include <algorithm>

namespace dtk {
namespace {

using IntRows = std::vector<std::vector<Integer>>;

void make_row_primitive(std::vector<Integer>& row) {
  Integer g = 0;
  for (const auto& v : row) g = gcd(g, v);
  if (g > 1)
    for (auto& v : row) v /= g;
}

IntRows integer_rows(const RatMatrix& m) {
  IntRows rows(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer den = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) den = lcm(den, Integer(m(r, c).get_den()));
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rat scaled = m(r, c) * den;
      rows[r][c] = scaled.get_num();
    }
    make_row_primitive(rows[r]);
  }
  return rows;
}

/// Integer row echelon form; returns pivot columns.
std::vector<std::size_t> echelon(IntRows& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Integer a = rows[r][c];
      const Integer b = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = a * rows[i][k] - b * rows[r][k];
      make_row_primitive(rows[i]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rat>> nullspace(const RatMatrix& m) {
  IntRows rows = integer_rows(m);
  const auto pivots = echelon(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols(), Rat(0));
    v[free] = 1;
    // Reduced form: each pivot row has zeros in the other pivot columns.
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const std::size_t pc = pivots[k];
      Rat value(-rows[k][free], rows[k][pc]);
      value.canonicalize();
      v[pc] = value;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank(const RatMatrix& m) {
  IntRows rows = integer_rows(m);
  return echelon(rows, m.cols()).size();
}

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss on integer-scaled rows.
  IntRows a(n, std::vector<Integer>(n));
  Rat scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    Integer den = 1;
    for (std::size_t c = 0; c < n; ++c) den = lcm(den, Integer(m(r, c).get_den()));
    for (std::size_t c = 0; c < n; ++c) {
      Rat s = m(r, c) * den;
      a[r][c] = s.get_num();
    }
    scale /= den;
  }
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t sel = k + 1;
      while (sel < n && a[sel][k] == 0) ++sel;
      if (sel == n) return 0;
      std::swap(a[k], a[sel]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  Rat det = Rat(a[n - 1][n - 1]) * scale;
  return sign > 0 ? det : Rat(-det);
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rat>& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    Rat s = x * den;
    out.push_back(s.get_num());
  }
  make_row_primitive(out);
  auto first = std::find_if(out.begin(), out.end(), [](const Integer& x) { return x != 0; });
  if (first != out.end() && *first < 0)
    for (auto& x : out) x = -x;
  return out;
}

RatPoly determinant(PolyMatrix m, const Ring& ring) {
  const std::size_t n = m.size();
  if (n == 0) return RatPoly(ring, Rat(1));
  for (const auto& row : m)
    if (row.size() != n) throw InvalidArgument("determinant of a non-square matrix");
  RatPoly prev(ring, Rat(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t sel = k + 1;
      while (sel < n && m[sel][k].is_zero()) ++sel;
      if (sel == n) return RatPoly(ring);
      std::swap(m[k], m[sel]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        RatPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw Error("Bareiss elimination: inexact division");
        m[i][j] = std::move(*q);
      }
    }
    prev = m[k][k];
  }
  RatPoly det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

std::size_t rank(PolyMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  const Ring ring = m.front().empty() ? Ring() : m.front().front().ring();
  RatPoly prev(ring, Rat(1));
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        RatPoly num = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        auto q = divide_exact(num, prev);
        if (!q) throw Error("fraction-free elimination: inexact division");
        m[i][j] = std::move(*q);
      }
      m[i][c] = RatPoly(ring);
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace dtk
