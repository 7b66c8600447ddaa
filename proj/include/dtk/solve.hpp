#pragma once

#include <vector>

#include "dtk/groebner.hpp"

namespace dtk {

/// Every rational point of V(I) for a zero-dimensional ideal. Each coordinate
/// in turn is pinned to the rational roots of its minimal polynomial, which is
/// read off grevlex normal forms of its powers. Points are
/// returned in lexicographic order. Throws InvalidArgument when V(I) is not
/// zero-dimensional.
std::vector<std::vector<Rat>> rational_solutions(const Ideal& ideal);

/// Rational points of a possibly positive-dimensional V(I): the free
/// coordinates of a maximal independent set are pinned to small integers
/// (0, 1, -1, 2, ...) until a nonempty zero-dimensional slice appears.
/// Returns the slice's rational points and the number of pinned coordinates.
struct SliceSolutions {
  std::vector<std::vector<Rat>> points;
  std::size_t pinned = 0;
};
SliceSolutions rational_points_of_slice(const Ideal& ideal, int attempts = 4);

}  // namespace dtk
