#pragma once

#include "latdiv/diversity.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/tightspan.hpp"

#include <random>
#include <string>
#include <vector>

namespace latdiv::testing {

using Rng = std::mt19937_64;

struct NamedLattice {
  std::string name;
  LatticePtr lattice;
};

/// Fixed lattices with at most `max_size` elements: chains, M3, N5, the
/// hexagon, Boolean lattices, divisor lattices, multiset grids.
std::vector<NamedLattice> lattice_suite(std::size_t max_size = 8);

/// Intersection-closed family of subsets of {0..points-1} with the full set,
/// ordered by inclusion. Usually not distributive.
LatticePtr random_closure_lattice(Rng& rng, unsigned points, unsigned generators);

/// Lower sets of a random poset on `points` elements.
LatticePtr random_distributive_lattice(Rng& rng, unsigned points);

/// Uniform rational lo + (hi - lo) * k / steps.
Rational random_between(Rng& rng, const Rational& lo, const Rational& hi, unsigned steps = 8);

/// A validated diversity built by clamping random values between the
/// monotone lower bound and the subadditive upper bound in element order,
/// retrying on dead ends and falling back to positive combinations of known
/// diversities.
DiversityFn random_diversity(Rng& rng, const LatticePtr& lattice);

/// sum_{b in B} f(b) >= delta(join B) over every subset B of L, and f >= 0.
bool in_PL_all_subsets(const std::vector<Rational>& f, const DiversityFn& delta);

/// Smallest value coordinate a can take with the others fixed, over the
/// unreduced all-subsets system.
Rational coordinate_infimum(const std::vector<Rational>& f, const DiversityFn& delta, Element a);

/// in_PL_all_subsets and every coordinate equals its infimum.
bool minimal_by_definition(const std::vector<Rational>& f, const DiversityFn& delta);

/// Random nonnegative point with coordinates in [0, scale].
std::vector<Rational> random_point(Rng& rng, std::size_t size, const Rational& scale);

}  // namespace latdiv::testing
