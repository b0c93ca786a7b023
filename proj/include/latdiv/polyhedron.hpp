#pragma once

#include "latdiv/rational.hpp"

#include <cstddef>
#include <vector>

namespace latdiv {

using RationalVector = std::vector<Rational>;

/// coeffs . x >= rhs
struct Halfspace {
  RationalVector coeffs;
  Rational rhs;
};

/// Extreme points and extreme rays of a pointed polyhedron. Rays are scaled
/// so their coordinates sum to 1.
struct VRepresentation {
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> rays;
};

/// Exact double description of {x in Q^dim : x >= 0, h.coeffs . x >= h.rhs}.
///
/// Works on the homogenized cone {(x, t) : x >= 0, t >= 0, a.x - b t >= 0},
/// starting from the orthant's unit rays and adding one halfspace at a time.
/// Adjacency uses the combinatorial zero-set test. `threads` splits the
/// pair scan of each step; the output does not depend on it. Vertices and
/// rays come back sorted lexicographically.
VRepresentation double_description(std::size_t dim, const std::vector<Halfspace>& halfspaces,
                                   std::size_t threads = 1);

/// Rank of a set of vectors, by exact Gaussian elimination.
std::size_t rank(std::vector<RationalVector> rows);

/// Dimension of the affine hull of a nonempty point set.
std::size_t affine_dimension(const std::vector<RationalVector>& points);

}  // namespace latdiv
