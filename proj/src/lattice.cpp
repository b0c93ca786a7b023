#include "latdiv/lattice.hpp"

#include "latdiv/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <set>

namespace latdiv {

namespace {

using Bitset = boost::dynamic_bitset<>;

struct Graph {
  std::vector<std::string> names;
  std::vector<std::set<std::size_t>> succ;
};

Graph read_graph(const std::vector<std::string>& elements, const std::vector<NamePair>& covers,
                 std::unordered_map<std::string, std::size_t>& lookup) {
  Graph g;
  g.names = elements;
  g.succ.resize(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!lookup.emplace(elements[i], i).second) {
      throw NotALattice("duplicate element identifier '" + elements[i] + "'");
    }
  }
  for (const auto& [lo, hi] : covers) {
    auto l = lookup.find(lo);
    auto h = lookup.find(hi);
    if (l == lookup.end()) throw UnknownElement("cover references unknown element '" + lo + "'");
    if (h == lookup.end()) throw UnknownElement("cover references unknown element '" + hi + "'");
    if (l->second == h->second) throw CycleError("cover cycle: " + lo + " < " + lo);
    g.succ[l->second].insert(h->second);
  }
  return g;
}

// Walks the residual graph left after Kahn's algorithm to name one cycle.
std::string describe_cycle(const Graph& g, const std::vector<std::size_t>& indegree) {
  const std::size_t n = g.names.size();
  std::size_t start = 0;
  while (indegree[start] == 0) ++start;
  std::vector<std::size_t> seen(n, SIZE_MAX);
  std::vector<std::size_t> path;
  std::size_t v = start;
  while (seen[v] == SIZE_MAX) {
    seen[v] = path.size();
    path.push_back(v);
    for (std::size_t w : g.succ[v]) {
      if (indegree[w] > 0) {
        v = w;
        break;
      }
    }
  }
  std::string out;
  for (std::size_t i = seen[v]; i < path.size(); ++i) out += g.names[path[i]] + " < ";
  out += g.names[v];
  return out;
}

// Kahn's algorithm, always taking the smallest available input index.
std::vector<std::size_t> topological_order(const Graph& g) {
  const std::size_t n = g.names.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& s : g.succ) {
    for (std::size_t w : s) ++indegree[w];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : g.succ[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) throw CycleError("cover relation is cyclic: " + describe_cycle(g, indegree));
  return order;
}

}  // namespace

FiniteLattice FiniteLattice::from_covers(const std::vector<std::string>& elements,
                                         const std::vector<NamePair>& covers, const Limits& limits) {
  if (elements.empty()) throw NoBottom("lattice has no elements");
  if (elements.size() > limits.max_lattice_elements) {
    throw SizeLimit("lattice has " + std::to_string(elements.size()) + " elements, limit is " +
                    std::to_string(limits.max_lattice_elements));
  }

  std::unordered_map<std::string, std::size_t> input_lookup;
  const Graph g = read_graph(elements, covers, input_lookup);
  const std::vector<std::size_t> order = topological_order(g);
  const std::size_t n = elements.size();

  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

  FiniteLattice L;
  L.names_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    L.names_[i] = elements[order[i]];
    L.lookup_.emplace(L.names_[i], i);
  }

  std::vector<ElementSet> succ(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : g.succ[v]) succ[position[v]].push_back(position[w]);
  }
  for (auto& s : succ) std::sort(s.begin(), s.end());

  // Reflexive-transitive closure; successors always have larger indices.
  L.up_.assign(n, Bitset(n));
  for (std::size_t i = n; i-- > 0;) {
    L.up_[i].set(i);
    for (Element w : succ[i]) L.up_[i] |= L.up_[w];
  }

  // Hasse reduction: keep (v, w) only when no other successor reaches w.
  L.lower_covers_.assign(n, {});
  L.upper_covers_.assign(n, {});
  for (Element v = 0; v < n; ++v) {
    for (Element w : succ[v]) {
      const bool implied = std::any_of(succ[v].begin(), succ[v].end(),
                                       [&](Element u) { return u != w && L.up_[u][w]; });
      if (!implied) {
        L.covers_.emplace_back(v, w);
        L.upper_covers_[v].push_back(w);
        L.lower_covers_[w].push_back(v);
      }
    }
  }
  std::sort(L.covers_.begin(), L.covers_.end());
  for (auto& s : L.lower_covers_) std::sort(s.begin(), s.end());

  std::vector<Bitset> down(n, Bitset(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = L.up_[a].find_first(); b != Bitset::npos; b = L.up_[a].find_next(b)) down[b].set(a);
  }

  L.join_.assign(n * n, 0);
  L.meet_.assign(n * n, 0);
  for (Element a = 0; a < n; ++a) {
    L.join_[a * n + a] = static_cast<std::uint32_t>(a);
    L.meet_[a * n + a] = static_cast<std::uint32_t>(a);
    for (Element b = a + 1; b < n; ++b) {
      const Bitset upper = L.up_[a] & L.up_[b];
      const Element j = upper.find_first();
      if (j == Bitset::npos) {
        throw NotALattice("pair (" + L.names_[a] + ", " + L.names_[b] + ") has no join");
      }
      if (!upper.is_subset_of(L.up_[j])) {
        throw NotALattice("pair (" + L.names_[a] + ", " + L.names_[b] + ") has no unique least upper bound");
      }
      const Bitset lower = down[a] & down[b];
      Element m = Bitset::npos;
      for (Element c = lower.find_first(); c != Bitset::npos; c = lower.find_next(c)) m = c;
      if (m == Bitset::npos) {
        throw NotALattice("pair (" + L.names_[a] + ", " + L.names_[b] + ") has no meet");
      }
      if (!lower.is_subset_of(down[m])) {
        throw NotALattice("pair (" + L.names_[a] + ", " + L.names_[b] + ") has no unique greatest lower bound");
      }
      L.join_[a * n + b] = L.join_[b * n + a] = static_cast<std::uint32_t>(j);
      L.meet_[a * n + b] = L.meet_[b * n + a] = static_cast<std::uint32_t>(m);
    }
  }
  if (!L.up_[0].all()) throw NoBottom("no least element");

  L.heights_.assign(n, 0);
  for (Element v = 0; v < n; ++v) {
    for (Element w : L.lower_covers_[v]) L.heights_[v] = std::max(L.heights_[v], L.heights_[w] + 1);
  }
  L.atoms_ = L.upper_covers_[0];
  std::sort(L.atoms_.begin(), L.atoms_.end());
  for (auto& s : L.upper_covers_) std::sort(s.begin(), s.end());
  for (Element v = 1; v < n; ++v) {
    if (L.lower_covers_[v].size() == 1) L.join_irreducibles_.push_back(v);
  }
  return L;
}

Element FiniteLattice::index(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw UnknownElement("unknown element '" + std::string(name) + "'");
}

std::optional<Element> FiniteLattice::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Element FiniteLattice::join_set(std::span<const Element> elements) const {
  Element acc = bottom();
  for (Element e : elements) {
    if (e >= size()) throw UnknownElement("element index " + std::to_string(e) + " out of range");
    acc = join(acc, e);
  }
  return acc;
}

Element FiniteLattice::meet_set(std::span<const Element> elements) const {
  Element acc = top();
  for (Element e : elements) {
    if (e >= size()) throw UnknownElement("element index " + std::to_string(e) + " out of range");
    acc = meet(acc, e);
  }
  return acc;
}

ElementSet FiniteLattice::down_set(Element a) const {
  if (a >= size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
  ElementSet out;
  for (Element b = 0; b <= a; ++b) {
    if (leq(b, a)) out.push_back(b);
  }
  return out;
}

ElementSet FiniteLattice::up_set(Element a) const {
  if (a >= size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
  ElementSet out;
  for (Element b = up_[a].find_first(); b != Bitset::npos; b = up_[a].find_next(b)) out.push_back(b);
  return out;
}

Element join_set(const FiniteLattice& lattice, std::span<const Element> elements) {
  return lattice.join_set(elements);
}

std::size_t height(const FiniteLattice& lattice, Element a) {
  if (a >= lattice.size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
  return lattice.height(a);
}

ElementSet down_set(const FiniteLattice& lattice, Element a) { return lattice.down_set(a); }

std::optional<TripleWitness> modularity_violation(const FiniteLattice& L) {
  const std::size_t n = L.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (!L.leq(c, a)) continue;
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), c)) return TripleWitness{a, b, c};
      }
    }
  }
  return std::nullopt;
}

std::optional<TripleWitness> distributivity_violation(const FiniteLattice& L) {
  const std::size_t n = L.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) return TripleWitness{a, b, c};
      }
    }
  }
  return std::nullopt;
}

Poset induced_poset(const FiniteLattice& L, const ElementSet& subset) {
  Poset p;
  for (Element e : subset) p.elements.push_back(L.name(e));
  for (Element x : subset) {
    for (Element y : subset) {
      if (!L.less(x, y)) continue;
      const bool between = std::any_of(subset.begin(), subset.end(),
                                       [&](Element z) { return L.less(x, z) && L.less(z, y); });
      if (!between) p.covers.emplace_back(L.name(x), L.name(y));
    }
  }
  return p;
}

std::string set_name(const std::vector<std::string>& members) {
  std::string out = "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ',';
    out += members[i];
  }
  return out + "}";
}

DownsetLattice build_downsets(const Poset& poset, const Limits& limits) {
  const std::size_t m = poset.elements.size();
  if (m > 63) throw SizeLimit("poset has " + std::to_string(m) + " elements; lower-set enumeration supports at most 63");

  std::unordered_map<std::string, std::size_t> lookup;
  const Graph g = read_graph(poset.elements, poset.covers, lookup);
  const std::vector<std::size_t> order = topological_order(g);

  // below[i]: strict predecessors of i (bitmask).
  std::vector<std::uint64_t> below(m, 0);
  for (std::size_t v : order) {
    for (std::size_t w : g.succ[v]) below[w] |= below[v] | (std::uint64_t{1} << v);
  }

  // Lower sets, by deciding elements in topological order. An element may
  // join only if everything below it already has.
  std::vector<std::uint64_t> sets;
  std::function<void(std::size_t, std::uint64_t)> grow = [&](std::size_t k, std::uint64_t acc) {
    if (k == m) {
      if (sets.size() >= limits.max_downsets) {
        throw SizeLimit("more than " + std::to_string(limits.max_downsets) + " lower sets");
      }
      sets.push_back(acc);
      return;
    }
    const std::size_t v = order[k];
    grow(k + 1, acc);
    if ((below[v] & acc) == below[v]) grow(k + 1, acc | (std::uint64_t{1} << v));
  };
  grow(0, 0);

  std::sort(sets.begin(), sets.end(), [](std::uint64_t x, std::uint64_t y) {
    const int cx = std::popcount(x);
    const int cy = std::popcount(y);
    if (cx != cy) return cx < cy;
    // Same size: compare member lists in input order.
    for (std::size_t i = 0; i < 64; ++i) {
      const bool bx = (x >> i) & 1U;
      const bool by = (y >> i) & 1U;
      if (bx != by) return bx;
    }
    return false;
  });

  std::unordered_map<std::uint64_t, std::string> names;
  std::vector<std::string> elements;
  for (std::uint64_t s : sets) {
    std::vector<std::string> members;
    for (std::size_t i = 0; i < m; ++i) {
      if ((s >> i) & 1U) members.push_back(poset.elements[i]);
    }
    elements.push_back(set_name(members));
    names.emplace(s, elements.back());
  }
  std::vector<NamePair> covers;
  for (std::uint64_t s : sets) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (s & bit) continue;
      if ((below[i] & s) != below[i]) continue;
      covers.emplace_back(names.at(s), names.at(s | bit));
    }
  }

  DownsetLattice out{FiniteLattice::from_covers(elements, covers, limits), {}};
  out.members.resize(sets.size());
  for (std::uint64_t s : sets) out.members[out.lattice.index(names.at(s))] = s;
  return out;
}

}  // namespace latdiv
