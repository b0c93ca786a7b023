#pragma once

#include "latdiv/lattice.hpp"
#include "latdiv/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace latdiv {

enum class Validity { unchecked, valid, invalid };

/// The lattice diversity axioms, plus nonnegativity of the values.
enum class Axiom {
  nonnegative,    ///< delta(a) >= 0
  zero_pattern,   ///< delta(a) = 0 iff a is the bottom or an atom
  monotone,       ///< a <= b implies delta(a) <= delta(b)
  subadditive,    ///< a meet b != 0 implies delta(a join b) <= delta(a) + delta(b)
};

std::string to_string(Axiom axiom);

/// One violated axiom, with its lexicographically least witness and the
/// number of element tuples that violate it.
struct Violation {
  Axiom axiom;
  ElementSet witness;
  std::size_t count = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  const Violation* find(Axiom axiom) const;
};

/// A function on a finite lattice with exact rational values. Invalid
/// functions are representable; operations that rely on the axioms call
/// require_valid() first.
class DiversityFn {
 public:
  /// Throws LatticeMismatch when the value count differs from the lattice size.
  DiversityFn(LatticePtr lattice, std::vector<Rational> values);

  const FiniteLattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& operator()(Element a) const { return values_.at(a); }

  Validity validity() const noexcept { return validity_; }
  bool is_valid() const noexcept { return validity_ == Validity::valid; }

  /// Checks every axiom over all elements and pairs and records the verdict.
  const ValidationReport& validate();
  const ValidationReport& report() const noexcept { return report_; }

  /// Throws NotValidated unless validate() succeeded.
  void require_valid() const;

  /// 0 != a < b implies delta(a) < delta(b).
  bool is_strictly_monotone() const;

 private:
  LatticePtr lattice_;
  std::vector<Rational> values_;
  Validity validity_ = Validity::unchecked;
  ValidationReport report_;
};

/// Validates and returns the report (same as delta.validate()).
const ValidationReport& validate(DiversityFn& delta);

/// Builds a DiversityFn and validates it; throws ValidationError listing the
/// first violation when the values are not a lattice diversity.
DiversityFn make_valid_diversity(LatticePtr lattice, std::vector<Rational> values);

/// Outcome of an exhaustive oracle scan. `witness` is the lexicographically
/// least failing tuple.
struct CheckResult {
  bool holds = true;
  std::vector<Element> witness;
  std::string detail;
  explicit operator bool() const noexcept { return holds; }
};

/// delta(a join c) <= delta(a join b) + delta(b join c) for all b != 0.
/// Works on raw values and does not require validity.
CheckResult triangle_scan(const FiniteLattice& lattice, std::span<const Rational> values);

/// triangle_scan on a validated diversity. Throws NotValidated.
CheckResult check_triangle(const DiversityFn& delta);

/// delta(x1 join ... join xn) <= sum delta(xi) for every multiset of size
/// 2..max_size with nonbottom meet. Throws NotValidated or SizeLimit.
CheckResult check_general_subadditivity(const DiversityFn& delta, std::size_t max_size,
                                        const Limits& limits = {});

/// A finite metric on named points (row-major distance table).
struct FiniteMetric {
  std::vector<std::string> points;
  std::vector<Rational> dist;

  std::size_t size() const noexcept { return points.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return dist.at(i * size() + j); }

  /// First broken metric axiom, if any.
  std::optional<std::string> violation() const;
};

/// d(a, b) = delta(a join b) on the atoms, in atom order. Throws NotValidated.
FiniteMetric induced_metric(const DiversityFn& delta);

/// delta(a1 join ... join an). Throws NotValidated or NotAnAtom.
Rational nway_distance(const DiversityFn& delta, std::span<const Element> atoms);

/// Exhaustive check of the Deza-Rosenberg n-way distance axioms for
/// d(a1..an) = delta(a1 join ... join an) over the atoms: total symmetry,
/// d(x,..,x) = 0, the simplex inequality
///   d(x1..xn) <= sum_{i=1..n} d(x1..x(i-1), x(i+1)..x(n+1)),
/// and d(x1,x1,x3..xn) = d(x1,x3,x3..xn) <= d(x1,x2,x3..xn) for n >= 3.
/// Throws NotValidated, SizeLimit, or std::invalid_argument for n < 2.
CheckResult check_nway_axioms(const DiversityFn& delta, std::size_t n, const Limits& limits = {});

}  // namespace latdiv
