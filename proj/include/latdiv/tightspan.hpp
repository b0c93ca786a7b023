#pragma once

#include "latdiv/diversity.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latdiv {

/// A nonnegative rational function on the elements of a lattice.
class LatticeFunction {
 public:
  /// Throws LatticeMismatch on a size mismatch and std::invalid_argument on a
  /// negative value.
  LatticeFunction(LatticePtr lattice, std::vector<Rational> values);

  const FiniteLattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& operator()(Element a) const { return values_.at(a); }

  /// Pointwise order f <= g.
  bool below(const LatticeFunction& other) const;

  friend bool operator==(const LatticeFunction& lhs, const LatticeFunction& rhs) {
    return lhs.values_ == rhs.values_;
  }

 private:
  LatticePtr lattice_;
  std::vector<Rational> values_;
};

struct TightSpanOptions {
  /// Largest lattice whose antichains are enumerated for the constraint system.
  std::size_t max_constraint_lattice = 14;
  /// Largest lattice for full tight-span enumeration.
  std::size_t max_enumeration_lattice = 8;
  /// Worker threads for the double-description pair scan.
  std::size_t threads = 1;
};

/// sum_{b in support} f(b) >= rhs
struct Constraint {
  ElementSet support;
  Rational rhs;
};

/// The reduced inequality system describing P_L (together with f >= 0).
/// Supports are nonempty antichains avoiding the bottom; a support is kept
/// only when every proper subset has a strictly smaller right-hand side.
/// Constraints are sorted by support.
struct ConstraintSystem {
  LatticePtr lattice;
  std::vector<Rational> delta;
  std::vector<Constraint> constraints;

  /// Indices of the constraints whose support contains a.
  std::vector<std::size_t> containing(Element a) const;
};

/// All antichains of L minus its bottom, including the empty one, in
/// lexicographic order of their sorted index lists.
std::vector<ElementSet> antichains(const FiniteLattice& lattice);

/// Throws NotValidated or SizeLimit.
ConstraintSystem constraint_system(const DiversityFn& delta, const TightSpanOptions& options = {});

struct PLMembership {
  bool member = true;
  /// First violated constraint, if any.
  std::optional<std::size_t> violated;
  explicit operator bool() const noexcept { return member; }
};

/// Throws LatticeMismatch.
PLMembership in_PL(const LatticeFunction& f, const ConstraintSystem& system);

/// Why a coordinate cannot be lowered.
struct Tightness {
  enum class Kind { zero_bound, constraint, slack };
  Kind kind = Kind::slack;
  std::size_t constraint = 0;
};

struct TLMembership {
  bool member = false;
  PLMembership pl;
  /// One entry per element; meaningful when pl.member holds.
  std::vector<Tightness> certificate;
  /// First element that could be lowered, if any.
  std::optional<Element> slack;
  explicit operator bool() const noexcept { return member; }
};

/// f is in P_L and every coordinate is either 0 or in a tight constraint.
/// Throws LatticeMismatch.
TLMembership in_TL(const LatticeFunction& f, const ConstraintSystem& system);

/// A point of T_L below f, lowering coordinates once each in element order.
/// Throws NotInPL or LatticeMismatch.
LatticeFunction minimize(const LatticeFunction& f, const ConstraintSystem& system);

/// h_x(a) = delta(x join a). Throws NotValidated or UnknownElement.
LatticeFunction kappa(const DiversityFn& delta, Element x);

/// f(a) = max over antichains B of delta(a join (join B)) - sum_B f, at every
/// a. Equivalent to in_TL. Throws LatticeMismatch.
bool check_characterization(const LatticeFunction& f, const ConstraintSystem& system);

struct PropertyReport {
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Checks the properties every point of T_L must have: f(0) = 0, f >= delta,
/// monotone, f(a v c) <= delta(a v b) + f(b v c) for b != 0, subadditive,
/// and f(a) = max_b {delta(a v b) - f(b)}. Throws NotInTL or NotValidated.
PropertyReport check_TL_properties(const LatticeFunction& f, const DiversityFn& delta);

struct KappaCounterexample {
  Element a;
  Element b;
  Element c;
  Rational joined;  ///< h_{a v b}(c)
  Rational larger;  ///< max(h_a(c), h_b(c))
  Rational gap;     ///< joined - larger
};

/// Every (a, b, c) with a < b (by index) and h_{a v b}(c) != max(h_a(c), h_b(c)).
/// Throws NotValidated.
std::vector<KappaCounterexample> kappa_homomorphism_counterexamples(const DiversityFn& delta);

struct Face {
  /// Indices into TightSpanComplex::vertices, ascending.
  std::vector<std::size_t> vertices;
  std::size_t dimension = 0;
  /// Constraints tight on the whole face.
  std::vector<std::size_t> tight_constraints;
  /// Elements where the whole face is 0.
  ElementSet zero_coordinates;
  /// Not contained in a larger bounded face.
  bool maximal = false;
};

struct TightSpanComplex {
  ConstraintSystem system;
  /// Vertices of P_L, lexicographically sorted.
  std::vector<LatticeFunction> vertices;
  /// Bounded faces of dimension >= 1, sorted by (dimension, vertices).
  std::vector<Face> faces;
  /// Unbounded faces whose interior samples were checked to lie outside T_L.
  std::size_t unbounded_faces_checked = 0;
};

/// T_L as the union of the bounded faces of P_L. Runs a self-check: every
/// vertex and an interior point of every bounded face lies in T_L, and an
/// interior point of every unbounded face next to one does not
/// (InternalError otherwise). Throws NotValidated or SizeLimit.
TightSpanComplex enumerate_tight_span(const DiversityFn& delta, const TightSpanOptions& options = {});

}  // namespace latdiv
