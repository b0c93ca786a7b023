#include "latdiv/tightspan.hpp"

#include "latdiv/errors.hpp"
#include "latdiv/polyhedron.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace latdiv {

namespace {

using Bitset = boost::dynamic_bitset<>;

void require_same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw LatticeMismatch("function and constraint system live on different lattices");
}

Rational support_sum(const Constraint& c, const std::vector<Rational>& f) {
  Rational sum = 0;
  for (Element b : c.support) sum += f[b];
  return sum;
}

}  // namespace

LatticeFunction::LatticeFunction(LatticePtr lattice, std::vector<Rational> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
  if (!lattice_ || values_.size() != lattice_->size()) {
    throw LatticeMismatch("lattice function must have one value per element");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (sgn(values_[i]) < 0) {
      throw std::invalid_argument("lattice function is negative at '" + lattice_->name(i) + "'");
    }
  }
}

bool LatticeFunction::below(const LatticeFunction& other) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > other.values_.at(i)) return false;
  }
  return true;
}

std::vector<std::size_t> ConstraintSystem::containing(Element a) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (std::binary_search(constraints[i].support.begin(), constraints[i].support.end(), a)) out.push_back(i);
  }
  return out;
}

std::vector<ElementSet> antichains(const FiniteLattice& L) {
  std::vector<ElementSet> out;
  ElementSet current;
  std::function<void(Element)> extend = [&](Element from) {
    out.push_back(current);
    for (Element e = from; e < L.size(); ++e) {
      if (e == L.bottom()) continue;
      const bool free = std::none_of(current.begin(), current.end(), [&](Element c) { return L.comparable(c, e); });
      if (!free) continue;
      current.push_back(e);
      extend(e + 1);
      current.pop_back();
    }
  };
  extend(0);
  return out;
}

ConstraintSystem constraint_system(const DiversityFn& delta, const TightSpanOptions& options) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  if (L.size() > options.max_constraint_lattice || L.size() > 31) {
    throw SizeLimit("constraint enumeration supports lattices of at most " +
                    std::to_string(options.max_constraint_lattice) + " elements, got " + std::to_string(L.size()));
  }
  ConstraintSystem system{delta.lattice_ptr(), delta.values(), {}};

  const auto all = antichains(L);
  std::unordered_map<std::uint32_t, const Rational*> rhs_of;
  std::vector<std::uint32_t> masks;
  for (const auto& B : all) {
    std::uint32_t mask = 0;
    for (Element b : B) mask |= std::uint32_t{1} << b;
    masks.push_back(mask);
    rhs_of.emplace(mask, &delta(L.join_set(B)));
  }
  // delta is monotone, so B is dominated by some proper subset exactly when
  // it is dominated by B minus one element (the empty set has rhs 0).
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].empty()) continue;
    const Rational& rhs = *rhs_of.at(masks[i]);
    bool dominated = false;
    for (Element b : all[i]) {
      if (*rhs_of.at(masks[i] & ~(std::uint32_t{1} << b)) >= rhs) {
        dominated = true;
        break;
      }
    }
    if (!dominated) system.constraints.push_back({all[i], rhs});
  }
  return system;
}

PLMembership in_PL(const LatticeFunction& f, const ConstraintSystem& system) {
  require_same_lattice(f.lattice_ptr(), system.lattice);
  PLMembership out;
  for (std::size_t i = 0; i < system.constraints.size(); ++i) {
    if (support_sum(system.constraints[i], f.values()) < system.constraints[i].rhs) {
      out.member = false;
      out.violated = i;
      break;
    }
  }
  return out;
}

TLMembership in_TL(const LatticeFunction& f, const ConstraintSystem& system) {
  TLMembership out;
  out.pl = in_PL(f, system);
  if (!out.pl.member) return out;

  std::vector<bool> tight(system.constraints.size());
  for (std::size_t i = 0; i < system.constraints.size(); ++i) {
    tight[i] = support_sum(system.constraints[i], f.values()) == system.constraints[i].rhs;
  }
  const FiniteLattice& L = f.lattice();
  out.certificate.resize(L.size());
  for (Element a = 0; a < L.size(); ++a) {
    Tightness& t = out.certificate[a];
    if (sgn(f(a)) == 0) {
      t.kind = Tightness::Kind::zero_bound;
      continue;
    }
    for (std::size_t i : system.containing(a)) {
      if (tight[i]) {
        t.kind = Tightness::Kind::constraint;
        t.constraint = i;
        break;
      }
    }
    if (t.kind == Tightness::Kind::slack && !out.slack) out.slack = a;
  }
  out.member = !out.slack;
  return out;
}

LatticeFunction minimize(const LatticeFunction& f, const ConstraintSystem& system) {
  if (!in_PL(f, system)) throw NotInPL("cannot minimize a function outside P_L");
  std::vector<Rational> g = f.values();
  for (Element a = 0; a < g.size(); ++a) {
    Rational bound = 0;
    for (std::size_t i : system.containing(a)) {
      const Constraint& c = system.constraints[i];
      Rational need = c.rhs;
      for (Element b : c.support) {
        if (b != a) need -= g[b];
      }
      if (need > bound) bound = need;
    }
    g[a] = bound;
  }
  return LatticeFunction(f.lattice_ptr(), std::move(g));
}

LatticeFunction kappa(const DiversityFn& delta, Element x) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  if (x >= L.size()) throw UnknownElement("element index " + std::to_string(x) + " out of range");
  std::vector<Rational> h(L.size());
  for (Element a = 0; a < L.size(); ++a) h[a] = delta(L.join(x, a));
  return LatticeFunction(delta.lattice_ptr(), std::move(h));
}

bool check_characterization(const LatticeFunction& f, const ConstraintSystem& system) {
  require_same_lattice(f.lattice_ptr(), system.lattice);
  const FiniteLattice& L = f.lattice();
  const auto& delta = system.delta;
  const auto all = antichains(L);
  std::vector<Element> joins;
  std::vector<Rational> sums;
  for (const auto& B : all) {
    joins.push_back(L.join_set(B));
    Rational s = 0;
    for (Element b : B) s += f(b);
    sums.push_back(std::move(s));
  }
  for (Element a = 0; a < L.size(); ++a) {
    Rational best = delta[a];
    for (std::size_t i = 0; i < all.size(); ++i) {
      Rational candidate = delta[L.join(a, joins[i])] - sums[i];
      if (candidate > best) best = std::move(candidate);
    }
    if (best != f(a)) return false;
  }
  return true;
}

PropertyReport check_TL_properties(const LatticeFunction& f, const DiversityFn& delta) {
  const ConstraintSystem system = constraint_system(delta);
  if (!in_TL(f, system)) throw NotInTL("function is not in the tight span");
  const FiniteLattice& L = delta.lattice();
  const std::size_t n = L.size();
  PropertyReport report;
  auto fail = [&](std::string what) {
    report.failures.push_back(std::move(what));
    return false;
  };

  if (sgn(f(L.bottom())) != 0) fail("f(0) = " + to_string(f(L.bottom())) + " != 0");

  for (Element a = 0; a < n; ++a) {
    if (f(a) < delta(a)) {
      fail("f(" + L.name(a) + ") < delta(" + L.name(a) + ")");
      break;
    }
  }

  [&] {
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (L.leq(a, b) && f(a) > f(b)) return fail("not monotone at (" + L.name(a) + ", " + L.name(b) + ")");
      }
    }
    return true;
  }();

  [&] {
    for (Element a = 0; a < n; ++a) {
      for (Element b = 1; b < n; ++b) {
        for (Element c = 0; c < n; ++c) {
          if (f(L.join(a, c)) > delta(L.join(a, b)) + f(L.join(b, c))) {
            return fail("f(a v c) <= delta(a v b) + f(b v c) fails at (" + L.name(a) + ", " + L.name(b) + ", " +
                        L.name(c) + ")");
          }
        }
      }
    }
    return true;
  }();

  [&] {
    for (Element a = 0; a < n; ++a) {
      for (Element b = a; b < n; ++b) {
        if (f(L.join(a, b)) > f(a) + f(b)) {
          return fail("not subadditive at (" + L.name(a) + ", " + L.name(b) + ")");
        }
      }
    }
    return true;
  }();

  for (Element a = 0; a < n; ++a) {
    Rational best = delta(a) - f(L.bottom());
    for (Element b = 0; b < n; ++b) {
      Rational candidate = delta(L.join(a, b)) - f(b);
      if (candidate > best) best = std::move(candidate);
    }
    if (best != f(a)) {
      fail("f(" + L.name(a) + ") != max_b delta(" + L.name(a) + " v b) - f(b)");
      break;
    }
  }
  return report;
}

std::vector<KappaCounterexample> kappa_homomorphism_counterexamples(const DiversityFn& delta) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  std::vector<KappaCounterexample> out;
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = a + 1; b < L.size(); ++b) {
      const Element ab = L.join(a, b);
      for (Element c = 0; c < L.size(); ++c) {
        const Rational& joined = delta(L.join(ab, c));
        const Rational& larger = std::max(delta(L.join(a, c)), delta(L.join(b, c)));
        if (joined != larger) out.push_back({a, b, c, joined, larger, joined - larger});
      }
    }
  }
  return out;
}

namespace {

struct Incidence {
  std::vector<Bitset> vertex_tight;
  std::vector<Bitset> ray_tight;
  std::vector<std::size_t> ray_axis;
};

// Inequalities are numbered: coordinates 0..n-1 (f(e) >= 0), then constraints.
Incidence incidence(const ConstraintSystem& system, const VRepresentation& rep) {
  const std::size_t n = system.lattice->size();
  const std::size_t total = n + system.constraints.size();
  Incidence inc;
  for (const auto& v : rep.vertices) {
    Bitset t(total);
    for (std::size_t e = 0; e < n; ++e) {
      if (sgn(v[e]) == 0) t.set(e);
    }
    for (std::size_t i = 0; i < system.constraints.size(); ++i) {
      if (support_sum(system.constraints[i], v) == system.constraints[i].rhs) t.set(n + i);
    }
    inc.vertex_tight.push_back(std::move(t));
  }
  for (const auto& r : rep.rays) {
    std::size_t axis = n;
    for (std::size_t e = 0; e < n; ++e) {
      if (r[e] == 1) axis = e;
      else if (sgn(r[e]) != 0) axis = n + 1;
    }
    if (axis >= n) throw InternalError("recession ray of P_L is not a coordinate direction");
    Bitset t(total);
    for (std::size_t e = 0; e < n; ++e) {
      if (e != axis) t.set(e);
    }
    for (std::size_t i = 0; i < system.constraints.size(); ++i) {
      const auto& s = system.constraints[i].support;
      if (!std::binary_search(s.begin(), s.end(), axis)) t.set(n + i);
    }
    inc.ray_tight.push_back(std::move(t));
    inc.ray_axis.push_back(axis);
  }
  return inc;
}

struct FaceKey {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> rays;
  auto operator<=>(const FaceKey&) const = default;
};

FaceKey close(const Incidence& inc, const Bitset& tight) {
  FaceKey key;
  for (std::size_t v = 0; v < inc.vertex_tight.size(); ++v) {
    if (tight.is_subset_of(inc.vertex_tight[v])) key.vertices.push_back(v);
  }
  for (std::size_t r = 0; r < inc.ray_tight.size(); ++r) {
    if (tight.is_subset_of(inc.ray_tight[r])) key.rays.push_back(r);
  }
  return key;
}

Bitset common_tight(const Incidence& inc, const FaceKey& key) {
  Bitset t = inc.vertex_tight.at(key.vertices.front());
  for (std::size_t v : key.vertices) t &= inc.vertex_tight[v];
  for (std::size_t r : key.rays) t &= inc.ray_tight[r];
  return t;
}

std::vector<Rational> interior_point(const VRepresentation& rep, const FaceKey& key) {
  std::vector<Rational> p(rep.vertices.front().size(), 0);
  for (std::size_t v : key.vertices) {
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += rep.vertices[v][k];
  }
  for (auto& x : p) x /= static_cast<unsigned long>(key.vertices.size());
  for (std::size_t r : key.rays) {
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += rep.rays[r][k];
  }
  return p;
}

}  // namespace

TightSpanComplex enumerate_tight_span(const DiversityFn& delta, const TightSpanOptions& options) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  const std::size_t n = L.size();
  if (n > options.max_enumeration_lattice) {
    throw SizeLimit("tight-span enumeration supports lattices of at most " +
                    std::to_string(options.max_enumeration_lattice) + " elements, got " + std::to_string(n));
  }

  TightSpanComplex out;
  out.system = constraint_system(delta, options);
  const ConstraintSystem& system = out.system;

  std::vector<Halfspace> halfspaces;
  for (const auto& c : system.constraints) {
    Halfspace h{RationalVector(n, 0), c.rhs};
    for (Element b : c.support) h.coeffs[b] = 1;
    halfspaces.push_back(std::move(h));
  }
  const VRepresentation rep = double_description(n, halfspaces, options.threads);
  const Incidence inc = incidence(system, rep);
  {
    auto axes = inc.ray_axis;
    std::sort(axes.begin(), axes.end());
    if (axes.size() != n || std::adjacent_find(axes.begin(), axes.end()) != axes.end()) {
      throw InternalError("recession cone of P_L is not the nonnegative orthant");
    }
  }

  for (const auto& v : rep.vertices) out.vertices.emplace_back(delta.lattice_ptr(), v);
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    if (!in_TL(out.vertices[v], system)) {
      throw InternalError("vertex " + to_tuple_string(rep.vertices[v]) + " of P_L is not in T_L");
    }
  }

  // Bounded faces, grown from vertices by adding one vertex at a time. A face
  // containing an unbounded face is unbounded, so growth stops there.
  std::set<FaceKey> bounded;
  std::vector<FaceKey> queue;
  for (std::size_t v = 0; v < rep.vertices.size(); ++v) {
    FaceKey key = close(inc, inc.vertex_tight[v]);
    if (!key.rays.empty()) throw InternalError("vertex closure picked up a ray");
    if (bounded.insert(key).second) queue.push_back(std::move(key));
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const FaceKey face = queue[head];
    const Bitset tight = common_tight(inc, face);
    for (std::size_t w = 0; w < rep.vertices.size(); ++w) {
      if (std::binary_search(face.vertices.begin(), face.vertices.end(), w)) continue;
      FaceKey grown = close(inc, tight & inc.vertex_tight[w]);
      if (!grown.rays.empty()) continue;
      if (bounded.insert(grown).second) queue.push_back(std::move(grown));
    }
  }

  std::set<FaceKey> unbounded;
  for (const FaceKey& face : bounded) {
    const Bitset tight = common_tight(inc, face);
    if (!in_TL(LatticeFunction(delta.lattice_ptr(), interior_point(rep, face)), system)) {
      throw InternalError("interior point of a bounded face is not in T_L");
    }
    for (std::size_t r = 0; r < rep.rays.size(); ++r) {
      unbounded.insert(close(inc, tight & inc.ray_tight[r]));
    }
  }
  for (const FaceKey& face : unbounded) {
    if (in_TL(LatticeFunction(delta.lattice_ptr(), interior_point(rep, face)), system)) {
      throw InternalError("interior point of an unbounded face is in T_L");
    }
  }
  out.unbounded_faces_checked = unbounded.size();

  for (const FaceKey& key : bounded) {
    std::vector<RationalVector> points;
    for (std::size_t v : key.vertices) points.push_back(rep.vertices[v]);
    Face face;
    face.vertices = key.vertices;
    face.dimension = affine_dimension(points);
    if (face.dimension == 0) continue;
    const Bitset tight = common_tight(inc, key);
    for (std::size_t e = 0; e < n; ++e) {
      if (tight[e]) face.zero_coordinates.push_back(e);
    }
    for (std::size_t i = 0; i < system.constraints.size(); ++i) {
      if (tight[n + i]) face.tight_constraints.push_back(i);
    }
    face.maximal = std::none_of(bounded.begin(), bounded.end(), [&](const FaceKey& other) {
      return other.vertices.size() > key.vertices.size() &&
             std::includes(other.vertices.begin(), other.vertices.end(), key.vertices.begin(), key.vertices.end());
    });
    out.faces.push_back(std::move(face));
  }
  std::sort(out.faces.begin(), out.faces.end(), [](const Face& x, const Face& y) {
    if (x.dimension != y.dimension) return x.dimension < y.dimension;
    return x.vertices < y.vertices;
  });
  return out;
}

}  // namespace latdiv
