#include "latdiv/polyhedron.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace latdiv {

namespace {

using Bitset = boost::dynamic_bitset<>;

struct Ray {
  RationalVector v;  // dim + 1 coordinates, last one is the homogenizing t
  Bitset zeros;      // processed inequalities that hold with equality
};

void normalize(RationalVector& v) {
  Rational sum = 0;
  for (const auto& x : v) sum += x;
  if (sgn(sum) <= 0) throw std::logic_error("double description produced a ray outside the orthant");
  for (auto& x : v) x /= sum;
}

Rational evaluate(const Halfspace& h, const RationalVector& v) {
  Rational out = -h.rhs * v.back();
  for (std::size_t i = 0; i < h.coeffs.size(); ++i) {
    if (sgn(h.coeffs[i]) != 0) out += h.coeffs[i] * v[i];
  }
  return out;
}

// New rays from adjacent (positive, negative) pairs for positives in [begin, end).
std::vector<Ray> combine(const std::vector<Ray>& rays, const std::vector<Rational>& values,
                         const std::vector<std::size_t>& pos, const std::vector<std::size_t>& neg, std::size_t begin,
                         std::size_t end, std::size_t new_index, std::size_t dim) {
  std::vector<Ray> out;
  for (std::size_t pi = begin; pi < end; ++pi) {
    const Ray& p = rays[pos[pi]];
    for (std::size_t q_idx : neg) {
      const Ray& q = rays[q_idx];
      Bitset common = p.zeros & q.zeros;
      if (common.count() + 2 < dim) continue;
      bool adjacent = true;
      for (std::size_t w = 0; w < rays.size() && adjacent; ++w) {
        if (w == pos[pi] || w == q_idx) continue;
        if (common.is_subset_of(rays[w].zeros)) adjacent = false;
      }
      if (!adjacent) continue;
      const Rational& vp = values[pos[pi]];
      const Rational& vq = values[q_idx];
      Ray r;
      r.v.resize(p.v.size());
      for (std::size_t i = 0; i < p.v.size(); ++i) r.v[i] = vp * q.v[i] - vq * p.v[i];
      normalize(r.v);
      r.zeros = std::move(common);
      r.zeros.set(new_index);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

VRepresentation double_description(std::size_t dim, const std::vector<Halfspace>& halfspaces, std::size_t threads) {
  const std::size_t cone_dim = dim + 1;
  const std::size_t total = cone_dim + halfspaces.size();
  for (const auto& h : halfspaces) {
    if (h.coeffs.size() != dim) throw std::invalid_argument("halfspace has the wrong dimension");
  }
  threads = std::max<std::size_t>(threads, 1);

  // The orthant x >= 0, t >= 0 is simplicial: its extreme rays are the unit
  // vectors and e_i is tight on every coordinate bound except its own.
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < cone_dim; ++i) {
    Ray r;
    r.v.assign(cone_dim, 0);
    r.v[i] = 1;
    r.zeros.resize(total);
    for (std::size_t k = 0; k < cone_dim; ++k) {
      if (k != i) r.zeros.set(k);
    }
    rays.push_back(std::move(r));
  }

  for (std::size_t j = 0; j < halfspaces.size(); ++j) {
    const std::size_t index = cone_dim + j;
    std::vector<Rational> values(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      values[r] = evaluate(halfspaces[j], rays[r].v);
      const int s = sgn(values[r]);
      if (s > 0) pos.push_back(r);
      if (s < 0) neg.push_back(r);
    }
    if (neg.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (sgn(values[r]) == 0) rays[r].zeros.set(index);
      }
      continue;
    }

    std::vector<std::vector<Ray>> parts(std::min(threads, std::max<std::size_t>(pos.size(), 1)));
    if (parts.size() == 1) {
      parts[0] = combine(rays, values, pos, neg, 0, pos.size(), index, cone_dim);
    } else {
      std::vector<std::thread> workers;
      const std::size_t chunk = (pos.size() + parts.size() - 1) / parts.size();
      for (std::size_t t = 0; t < parts.size(); ++t) {
        const std::size_t begin = std::min(pos.size(), t * chunk);
        const std::size_t end = std::min(pos.size(), begin + chunk);
        workers.emplace_back([&, t, begin, end] { parts[t] = combine(rays, values, pos, neg, begin, end, index, cone_dim); });
      }
      for (auto& w : workers) w.join();
    }

    for (std::size_t r = 0; r < rays.size(); ++r) {
      const int s = sgn(values[r]);
      if (s == 0) rays[r].zeros.set(index);
      if (s >= 0) next.push_back(std::move(rays[r]));
    }
    for (auto& part : parts) {
      for (auto& r : part) next.push_back(std::move(r));
    }
    rays = std::move(next);
  }

  VRepresentation out;
  for (const Ray& r : rays) {
    const Rational& t = r.v.back();
    RationalVector x(r.v.begin(), r.v.end() - 1);
    if (sgn(t) > 0) {
      for (auto& c : x) c /= t;
      out.vertices.push_back(std::move(x));
    } else {
      normalize(x);
      out.rays.push_back(std::move(x));
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

std::size_t rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      const Rational factor = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= factor * rows[r][k];
    }
    ++r;
  }
  return r;
}

std::size_t affine_dimension(const std::vector<RationalVector>& points) {
  if (points.empty()) throw std::invalid_argument("affine dimension of an empty set");
  std::vector<RationalVector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector d(points[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

}  // namespace latdiv
