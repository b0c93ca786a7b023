#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latdiv {

/// Dense index of a lattice element. Indices follow the lattice's canonical
/// topological order, so index 0 is always the bottom.
using Element = std::size_t;

/// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<Element>;

using NamePair = std::pair<std::string, std::string>;

/// Size guards for the exponential constructions.
struct Limits {
  /// Largest lattice from_covers will build (dense n*n tables).
  std::size_t max_lattice_elements = 4096;
  /// Largest number of lower sets downsets_lattice may produce.
  std::size_t max_downsets = std::size_t{1} << 20;
  /// Largest tuple count the exhaustive n-ary oracles will scan.
  std::size_t max_tuples = std::size_t{1} << 22;
};

/// A finite lattice given by its Hasse diagram, with order, meet and join
/// precomputed. Immutable once built.
class FiniteLattice {
 public:
  /// Builds and validates a lattice. Elements are reordered into a
  /// topological order of the cover graph, ties broken by input position.
  /// Redundant (transitively implied) cover pairs are dropped.
  ///
  /// Throws CycleError, NotALattice (naming a pair without a unique join or
  /// meet), NoBottom, UnknownElement or SizeLimit.
  static FiniteLattice from_covers(const std::vector<std::string>& elements,
                                   const std::vector<NamePair>& covers,
                                   const Limits& limits = {});

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Element a) const { return names_.at(a); }

  /// Throws UnknownElement.
  Element index(std::string_view name) const;
  std::optional<Element> find(std::string_view name) const;

  bool leq(Element a, Element b) const { return up_[a][b]; }
  bool less(Element a, Element b) const { return a != b && up_[a][b]; }
  bool comparable(Element a, Element b) const { return leq(a, b) || leq(b, a); }

  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }

  /// Join of a set; the empty join is the bottom.
  Element join_set(std::span<const Element> elements) const;
  /// Meet of a set; the empty meet is the top.
  Element meet_set(std::span<const Element> elements) const;

  Element bottom() const noexcept { return 0; }
  Element top() const noexcept { return size() - 1; }

  const ElementSet& atoms() const noexcept { return atoms_; }
  const ElementSet& join_irreducibles() const noexcept { return join_irreducibles_; }
  bool is_atom(Element a) const { return lower_covers_.at(a).size() == 1 && lower_covers_[a][0] == bottom(); }
  bool is_join_irreducible(Element a) const { return lower_covers_.at(a).size() == 1; }

  /// Length of the longest chain from the bottom to a.
  std::size_t height(Element a) const { return heights_.at(a); }

  /// Cover pairs (lower, upper), sorted.
  const std::vector<std::pair<Element, Element>>& covers() const noexcept { return covers_; }
  const ElementSet& lower_covers(Element a) const { return lower_covers_.at(a); }
  const ElementSet& upper_covers(Element a) const { return upper_covers_.at(a); }

  /// {y : y <= a}, ascending.
  ElementSet down_set(Element a) const;
  /// {y : a <= y}, ascending.
  ElementSet up_set(Element a) const;

  /// Structural identity: same element names in the same order and same covers.
  friend bool operator==(const FiniteLattice& lhs, const FiniteLattice& rhs) {
    return lhs.names_ == rhs.names_ && lhs.covers_ == rhs.covers_;
  }

 private:
  FiniteLattice() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> lookup_;
  std::vector<std::pair<Element, Element>> covers_;
  std::vector<ElementSet> lower_covers_;
  std::vector<ElementSet> upper_covers_;
  std::vector<boost::dynamic_bitset<>> up_;
  std::vector<std::uint32_t> join_;
  std::vector<std::uint32_t> meet_;
  std::vector<std::size_t> heights_;
  ElementSet atoms_;
  ElementSet join_irreducibles_;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

inline LatticePtr share(FiniteLattice lattice) {
  return std::make_shared<const FiniteLattice>(std::move(lattice));
}

/// Free-function spellings of the core queries. All throw UnknownElement on
/// an out-of-range index.
Element join_set(const FiniteLattice& lattice, std::span<const Element> elements);
std::size_t height(const FiniteLattice& lattice, Element a);
ElementSet down_set(const FiniteLattice& lattice, Element a);

/// A triple (a, b, c) on which a lattice law fails.
struct TripleWitness {
  Element a;
  Element b;
  Element c;
  friend bool operator==(const TripleWitness&, const TripleWitness&) = default;
};

/// First (lexicographically least) triple with c <= a and
/// a meet (b join c) != (a meet b) join c.
std::optional<TripleWitness> modularity_violation(const FiniteLattice& lattice);
/// First triple with a meet (b join c) != (a meet b) join (a meet c).
std::optional<TripleWitness> distributivity_violation(const FiniteLattice& lattice);

inline bool is_modular(const FiniteLattice& lattice) { return !modularity_violation(lattice); }
inline bool is_distributive(const FiniteLattice& lattice) { return !distributivity_violation(lattice); }

/// A finite poset in the same (elements, covers) form as a lattice. No
/// join/meet validation is applied.
struct Poset {
  std::vector<std::string> elements;
  std::vector<NamePair> covers;
};

/// The subposet induced on `subset`, with covers recomputed as the Hasse
/// diagram of the restricted order. Element order follows the lattice.
Poset induced_poset(const FiniteLattice& lattice, const ElementSet& subset);

/// Lattice of lower sets plus, for each of its elements, the member bitmask
/// (bit i = i-th poset element in input order).
struct DownsetLattice {
  FiniteLattice lattice;
  std::vector<std::uint64_t> members;
};

/// O(P): all lower sets of P ordered by inclusion. Elements are named
/// "{p,q}" with members listed in poset input order; "{}" is the bottom.
/// Throws CycleError, UnknownElement or SizeLimit.
DownsetLattice build_downsets(const Poset& poset, const Limits& limits = {});

inline FiniteLattice downsets_lattice(const Poset& poset, const Limits& limits = {}) {
  return build_downsets(poset, limits).lattice;
}

/// "{a,b}" naming used by set-like generators.
std::string set_name(const std::vector<std::string>& members);

}  // namespace latdiv
