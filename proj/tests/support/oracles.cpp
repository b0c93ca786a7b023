#include "oracles.hpp"

#include "latdiv/constructions.hpp"
#include "latdiv/errors.hpp"

#include <algorithm>
#include <set>

namespace latdiv::testing {

std::vector<NamedLattice> lattice_suite(std::size_t max_size) {
  std::vector<NamedLattice> out;
  auto add = [&](std::string name, FiniteLattice L) {
    if (L.size() <= max_size) out.push_back({std::move(name), share(std::move(L))});
  };
  for (std::size_t k = 1; k + 1 <= max_size; ++k) add("chain-" + std::to_string(k), chain_lattice(k));
  add("m3", m3_lattice());
  add("n5", n5_lattice());
  add("hexagon", FiniteLattice::from_covers({"0", "a", "b", "c", "d", "1"},
                                            {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "d"}, {"d", "1"}}));
  add("m4", FiniteLattice::from_covers({"0", "a", "b", "c", "d", "1"}, {{"0", "a"},
                                                                         {"0", "b"},
                                                                         {"0", "c"},
                                                                         {"0", "d"},
                                                                         {"a", "1"},
                                                                         {"b", "1"},
                                                                         {"c", "1"},
                                                                         {"d", "1"}}));
  for (std::size_t n = 2; n <= 3; ++n) add("powerset-" + std::to_string(n), powerset_lattice(n));
  for (std::uint64_t n : {6, 8, 12, 18, 24, 30}) add("divisors-" + std::to_string(n), divisor_lattice(n));
  add("multiset-1x2", multiset_lattice({"x", "y"}, {1, 2}));
  add("multiset-1x3", multiset_lattice({"x", "y"}, {1, 3}));
  return out;
}

LatticePtr random_closure_lattice(Rng& rng, unsigned points, unsigned generators) {
  const std::uint64_t full = (std::uint64_t{1} << points) - 1;
  std::set<std::uint64_t> family{full};
  std::uniform_int_distribution<std::uint64_t> pick(0, full);
  for (unsigned i = 0; i < generators; ++i) family.insert(pick(rng));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint64_t> current(family.begin(), family.end());
    for (auto a : current) {
      for (auto b : current) grew |= family.insert(a & b).second;
    }
  }
  auto name = [&](std::uint64_t m) {
    std::vector<std::string> members;
    for (unsigned i = 0; i < points; ++i) {
      if ((m >> i) & 1U) members.push_back(std::to_string(i));
    }
    return set_name(members);
  };
  std::vector<std::string> elements;
  std::vector<NamePair> covers;
  for (auto a : family) elements.push_back(name(a));
  for (auto a : family) {
    for (auto b : family) {
      if (a == b || (a & b) != a) continue;
      const bool between = std::any_of(family.begin(), family.end(), [&](std::uint64_t c) {
        return c != a && c != b && (a & c) == a && (c & b) == c;
      });
      if (!between) covers.emplace_back(name(a), name(b));
    }
  }
  return share(FiniteLattice::from_covers(elements, covers));
}

LatticePtr random_distributive_lattice(Rng& rng, unsigned points) {
  Poset poset;
  std::bernoulli_distribution edge(0.35);
  for (unsigned i = 0; i < points; ++i) poset.elements.push_back("p" + std::to_string(i));
  for (unsigned i = 0; i < points; ++i) {
    for (unsigned j = i + 1; j < points; ++j) {
      if (edge(rng)) poset.covers.emplace_back(poset.elements[i], poset.elements[j]);
    }
  }
  return share(downsets_lattice(poset));
}

Rational random_between(Rng& rng, const Rational& lo, const Rational& hi, unsigned steps) {
  std::uniform_int_distribution<unsigned> k(0, steps);
  Rational out = lo + (hi - lo) * Rational(k(rng), steps);
  out.canonicalize();
  return out;
}

namespace {

std::optional<std::vector<Rational>> greedy_values(Rng& rng, const FiniteLattice& L) {
  std::vector<Rational> v(L.size(), 0);
  for (Element a = 1; a < L.size(); ++a) {
    if (L.is_atom(a)) continue;
    Rational lo = 0;
    for (Element b = 0; b < a; ++b) {
      if (L.less(b, a) && v[b] > lo) lo = v[b];
    }
    std::optional<Rational> hi;
    for (Element x = 1; x < a; ++x) {
      for (Element y = x; y < a; ++y) {
        if (L.join(x, y) != a || L.meet(x, y) == L.bottom()) continue;
        const Rational s = v[x] + v[y];
        if (!hi || s < *hi) hi = s;
      }
    }
    const Rational top = hi ? *hi : lo + 3;
    if (top < lo || sgn(top) <= 0) return std::nullopt;
    if (sgn(lo) == 0) {
      std::uniform_int_distribution<unsigned> k(1, 8);
      v[a] = top * Rational(k(rng), 8);
      v[a].canonicalize();
    } else {
      v[a] = random_between(rng, lo, top);
    }
  }
  return v;
}

}  // namespace

DiversityFn random_diversity(Rng& rng, const LatticePtr& lattice) {
  const FiniteLattice& L = *lattice;
  for (int attempt = 0; attempt < 20; ++attempt) {
    if (auto values = greedy_values(rng, L)) {
      DiversityFn delta(lattice, std::move(*values));
      if (!delta.validate().ok()) throw InternalError("greedy diversity failed validation");
      return delta;
    }
  }
  std::uniform_int_distribution<unsigned> k(1, 6);
  const Rational s(k(rng), 2);
  std::vector<Rational> values = trivial_diversity(lattice).values();
  for (auto& x : values) x *= s;
  if (is_modular(L)) {
    const auto h = height_diversity(lattice).values();
    const Rational t(k(rng), 3);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += t * h[i];
  }
  for (auto& x : values) x.canonicalize();
  return make_valid_diversity(lattice, std::move(values));
}

bool in_PL_all_subsets(const std::vector<Rational>& f, const DiversityFn& delta) {
  const FiniteLattice& L = delta.lattice();
  if (std::any_of(f.begin(), f.end(), [](const Rational& x) { return sgn(x) < 0; })) return false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << L.size()); ++mask) {
    ElementSet B;
    Rational sum = 0;
    for (Element b = 0; b < L.size(); ++b) {
      if ((mask >> b) & 1U) {
        B.push_back(b);
        sum += f[b];
      }
    }
    if (sum < delta(L.join_set(B))) return false;
  }
  return true;
}

Rational coordinate_infimum(const std::vector<Rational>& f, const DiversityFn& delta, Element a) {
  const FiniteLattice& L = delta.lattice();
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << L.size()); ++mask) {
    if (!((mask >> a) & 1U)) continue;
    ElementSet B;
    Rational need = 0;
    for (Element b = 0; b < L.size(); ++b) {
      if ((mask >> b) & 1U) {
        B.push_back(b);
        if (b != a) need -= f[b];
      }
    }
    need += delta(L.join_set(B));
    if (need > best) best = need;
  }
  return best;
}

bool minimal_by_definition(const std::vector<Rational>& f, const DiversityFn& delta) {
  if (!in_PL_all_subsets(f, delta)) return false;
  for (Element a = 0; a < f.size(); ++a) {
    if (coordinate_infimum(f, delta, a) != f[a]) return false;
  }
  return true;
}

std::vector<Rational> random_point(Rng& rng, std::size_t size, const Rational& scale) {
  std::vector<Rational> f(size);
  for (auto& x : f) x = random_between(rng, 0, scale, 8);
  return f;
}

}  // namespace latdiv::testing
