#pragma once

#include "latdiv/diversity.hpp"
#include "latdiv/lattice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latdiv {

/// A finite distributive lattice L together with its isomorphism
/// eta: L -> O(J(L)), eta(a) = J(L) intersected with the down-set of a,
/// and its inverse A -> join(A).
struct BirkhoffRepresentation {
  LatticePtr source;
  /// J(L) as source indices, ascending.
  ElementSet jirr;
  /// J(L) with the order induced from the source.
  Poset jirr_poset;
  /// O(J(L)); element names list J(L) members in source order.
  LatticePtr target;
  /// Member bitmask over `jirr` for each target element.
  std::vector<std::uint64_t> target_members;
  /// source element -> target element
  std::vector<Element> eta;
  /// target element -> source element
  std::vector<Element> eta_inv;

  /// eta(a) as source indices of join-irreducibles.
  ElementSet eta_set(Element a) const;
};

/// Throws NotDistributive with the witness triple. The isomorphism laws are
/// verified exhaustively before returning (InternalError on failure).
BirkhoffRepresentation representation(const LatticePtr& lattice, const Limits& limits = {});

/// J(L) by the definition: a != 0 and a = b join c implies a = b or a = c.
/// Used to cross-check the one-lower-cover shortcut.
ElementSet join_irreducibles_by_definition(const FiniteLattice& lattice);

/// The extension of delta to all subsets A of J(L):
/// delta(join A) when |A| >= 2, otherwise 0.
/// Throws NotValidated, or NotInJ when A holds a non-join-irreducible.
Rational hat_delta(const DiversityFn& delta, const ElementSet& subset);

struct ExtensionReport {
  std::vector<std::string> failures;
  std::size_t subsets_checked = 0;
  bool triangle_checked = false;
  bool ok() const noexcept { return failures.empty(); }
};

/// Exhaustively checks that hat_delta is a classical diversity on J(L) whose
/// restriction along eta reproduces delta: the zero pattern, monotonicity,
/// subadditivity on intersecting subsets, hat_delta(eta(a)) = delta(a), and
/// (for |J(L)| <= 6) the classical triangle inequality.
/// Throws NotDistributive, NotValidated, or SizeLimit when |J(L)| exceeds
/// `max_jirr`.
ExtensionReport verify_extension_theorem(const DiversityFn& delta, std::size_t max_jirr = 12);

}  // namespace latdiv
