#pragma once

#include "latdiv/diversity.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace latdiv {

// ---------------------------------------------------------------------------
// Lattice generators

/// M3: 0 < a1, a2, a3 < a4.
FiniteLattice m3_lattice();
/// N5: 0 < a1 < a3 < a4 and 0 < a2 < a4.
FiniteLattice n5_lattice();
/// Chain 0 < a1 < ... < ak.
FiniteLattice chain_lattice(std::size_t length);
/// Subsets of `points` ordered by inclusion, named "{}", "{x}", "{x,y}", ...
FiniteLattice powerset_lattice(const std::vector<std::string>& points, const Limits& limits = {});
/// Powerset of {1, ..., n}.
FiniteLattice powerset_lattice(std::size_t n, const Limits& limits = {});

/// Divisors of n under divisibility; bottom 1, atoms the prime divisors.
/// Throws SizeLimit when n has more divisors than the lattice limit allows,
/// std::invalid_argument for n == 0.
FiniteLattice divisor_lattice(std::uint64_t n, const Limits& limits = {});

/// Total number of prime factors of n, with multiplicity.
unsigned prime_omega(std::uint64_t n);

/// Multisets over `points` with 0 <= k_x <= caps[x]. Elements are named
/// "{x^1,y^2}" with points in input order; "{}" is the bottom.
FiniteLattice multiset_lattice(const std::vector<std::string>& points, const std::vector<unsigned>& caps,
                               const Limits& limits = {});

/// Multiplicities of a multiset_lattice element, parsed back from its name.
std::vector<unsigned> multiset_counts(const FiniteLattice& lattice, Element a,
                                      const std::vector<std::string>& points);

// ---------------------------------------------------------------------------
// Diversity constructions. Every constructor returns a validated diversity.

/// 0 on the bottom and the atoms, 1 elsewhere. Exists on every lattice.
DiversityFn trivial_diversity(const LatticePtr& lattice);

/// 0 at the bottom, h(a) - 1 elsewhere. Throws NotModular.
DiversityFn height_diversity(const LatticePtr& lattice);

/// 0 on the bottom and the atoms, h(a) elsewhere. Throws NotModular.
DiversityFn cardinality_diversity(const LatticePtr& lattice);

/// M3 diversity determined by alpha = delta(a4) > 0.
DiversityFn m3_diversity(const Rational& alpha);

/// N5 diversity with delta(a3) = alpha, delta(a4) = beta, 0 < alpha <= beta.
DiversityFn n5_diversity(const Rational& alpha, const Rational& beta);

struct Valuation {
  LatticePtr lattice;
  std::vector<Rational> values;
};

/// Throws NonzeroAtBottom, NotPositive (a < b with v(a) >= v(b)) or
/// NotASubValuation (v(a meet b) + v(a join b) > v(a) + v(b)), each naming
/// the offending elements.
void check_positive_subvaluation(const Valuation& v);

/// True when v(a meet b) + v(a join b) = v(a) + v(b) on every pair.
bool is_valuation(const Valuation& v);

/// 0 on the atoms, v(a) elsewhere, for a positive sub-valuation with v(0) = 0.
/// The log valuation on divisibility is the textbook example but irrational;
/// only rational valuations are representable here.
DiversityFn valuation_diversity(const Valuation& v);

/// delta(n) = Omega(n) unless n is prime or 1, in which case 0. Expects a
/// lattice from divisor_lattice (names are the divisors).
DiversityFn omega_diversity(const LatticePtr& divisors);

/// Omega as a valuation on a divisor lattice.
Valuation omega_valuation(const LatticePtr& divisors);

/// Chain functions f_x given as tables f_x(0..cap_x); f_x(0) = f_x(1) = 0,
/// f_x(k) > 0 for k >= 2, nondecreasing.
using ChainTables = std::vector<std::vector<Rational>>;

/// delta = max(max_{x,y in support} d(x,y), max_x f_x(k_x)).
/// `metric.points` must match the points the lattice was built from.
/// Throws BadChainFunction (pattern violated or table shorter than the cap)
/// and ValidationError when `metric` is not a metric.
DiversityFn multiset_diversity(const LatticePtr& lattice, const std::vector<unsigned>& caps,
                               const FiniteMetric& metric, const ChainTables& chains);

/// A classical diversity on subsets of a finite ground set, as a function of
/// the member bitmask.
struct ClassicalDiversity {
  std::vector<std::string> points;
  std::function<Rational(std::uint64_t)> value;
};

/// Diameter diversity of a finite metric: max pairwise distance of the set.
ClassicalDiversity diameter_diversity(const FiniteMetric& metric);

/// Restriction of a classical diversity to a family of subsets closed under
/// union and intersection and containing the empty set. The family's
/// lattice is named like powerset_lattice. Throws NotASublattice with the
/// offending pair, and ValidationError when the restriction breaks an axiom
/// (this happens when a minimal nonempty member is not a singleton).
DiversityFn restrict_classical(const ClassicalDiversity& diversity, const std::vector<std::uint64_t>& family);

}  // namespace latdiv
