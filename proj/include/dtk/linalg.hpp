#pragma once

// Exact linear algebra over Q and over Q[x_1..x_n].

#include <cstddef>
#include <vector>

#include "dtk/poly.hpp"

namespace dtk {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

/// Basis of {v : M v = 0}; one vector per free column, that column set to 1.
/// Row reduction is fraction-free on integer-scaled rows.
std::vector<std::vector<Rat>> nullspace(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Requires a square matrix.
Rat determinant(const RatMatrix& m);

/// Integer multiple with gcd 1 whose first nonzero entry is positive.
std::vector<Integer> primitive_integer_vector(const std::vector<Rat>& v);

using PolyMatrix = std::vector<std::vector<RatPoly>>;

/// Bareiss fraction-free determinant of a square polynomial matrix.
RatPoly determinant(PolyMatrix m, const Ring& ring);
/// Rank over the fraction field, by fraction-free elimination.
std::size_t rank(PolyMatrix m);

}  // namespace dtk
