#include "latdiv/polyhedron.hpp"

#include <doctest.h>

#include <algorithm>
#include <optional>
#include <random>

using namespace latdiv;

namespace {

// Unique solution of the square system A x = b, if any.
std::optional<RationalVector> solve(std::vector<RationalVector> A, RationalVector b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(A[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(A[pivot], A[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(A[r][col]) == 0) continue;
      const Rational f = A[r][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

// Vertices by trying every choice of `dim` tight inequalities.
std::vector<RationalVector> brute_force_vertices(std::size_t dim, const std::vector<Halfspace>& hs) {
  std::vector<Halfspace> all = hs;
  for (std::size_t i = 0; i < dim; ++i) {
    Halfspace h{RationalVector(dim, 0), 0};
    h.coeffs[i] = 1;
    all.push_back(h);
  }
  auto feasible = [&](const RationalVector& x) {
    for (const auto& h : all) {
      Rational s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += h.coeffs[k] * x[k];
      if (s < h.rhs) return false;
    }
    return true;
  };
  std::vector<RationalVector> out;
  std::vector<bool> choose(all.size(), false);
  std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(dim), true);
  do {
    std::vector<RationalVector> A;
    RationalVector b;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!choose[i]) continue;
      A.push_back(all[i].coeffs);
      b.push_back(all[i].rhs);
    }
    if (auto x = solve(A, b); x && feasible(*x)) out.push_back(*x);
  } while (std::prev_permutation(choose.begin(), choose.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("double description of a segment") {
  // x0 + x1 >= 1, x1 >= 1/2 in the plane.
  const std::vector<Halfspace> hs = {{{1, 1}, 1}, {{0, 1}, Rational(1, 2)}};
  const VRepresentation v = double_description(2, hs);
  CHECK(v.vertices == std::vector<RationalVector>{{0, 1}, {Rational(1, 2), Rational(1, 2)}});
  CHECK(v.rays == std::vector<RationalVector>{{0, 1}, {1, 0}});
}

TEST_CASE("double description of the orthant") {
  const VRepresentation v = double_description(3, {});
  CHECK(v.vertices == std::vector<RationalVector>{{0, 0, 0}});
  CHECK(v.rays.size() == 3);
}

TEST_CASE("double description of an empty polyhedron") {
  const VRepresentation v = double_description(2, {{{-1, -1}, 1}});
  CHECK(v.vertices.empty());
}

TEST_CASE("double description agrees with brute force") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coeff(-2, 3);
  std::uniform_int_distribution<int> rhs(-2, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    std::vector<Halfspace> hs;
    for (int i = 0; i < 4; ++i) {
      Halfspace h{RationalVector(dim), rhs(rng)};
      for (auto& c : h.coeffs) c = coeff(rng);
      if (trial % 2 == 0) {
        for (auto& c : h.coeffs) c = abs(c);
      }
      hs.push_back(h);
    }
    const VRepresentation v = double_description(dim, hs);
    CHECK(v.vertices == brute_force_vertices(dim, hs));
    CHECK(double_description(dim, hs, 3).vertices == v.vertices);
    CHECK(double_description(dim, hs, 3).rays == v.rays);
    for (const auto& r : v.rays) {
      Rational sum = 0;
      for (const auto& x : r) {
        CHECK(sgn(x) >= 0);
        sum += x;
      }
      CHECK(sum == 1);
      for (const auto& h : hs) {
        Rational s = 0;
        for (std::size_t k = 0; k < dim; ++k) s += h.coeffs[k] * r[k];
        CHECK(sgn(s) >= 0);
      }
    }
  }
}

TEST_CASE("rank and affine dimension") {
  CHECK(rank({{1, 2}, {2, 4}}) == 1);
  CHECK(rank({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) == 2);
  CHECK(rank({}) == 0);
  CHECK(affine_dimension({{1, 1}}) == 0);
  CHECK(affine_dimension({{0, 0}, {1, 1}, {2, 2}}) == 1);
  CHECK(affine_dimension({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}}) == 2);
}
