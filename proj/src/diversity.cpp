#include "latdiv/diversity.hpp"

#include "latdiv/errors.hpp"

#include <algorithm>
#include <functional>

namespace latdiv {

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::nonnegative: return "nonnegativity";
    case Axiom::zero_pattern: return "zero-pattern";
    case Axiom::monotone: return "monotonicity";
    case Axiom::subadditive: return "subadditivity";
  }
  return "unknown";
}

const Violation* ValidationReport::find(Axiom axiom) const {
  for (const auto& v : violations) {
    if (v.axiom == axiom) return &v;
  }
  return nullptr;
}

DiversityFn::DiversityFn(LatticePtr lattice, std::vector<Rational> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
  if (!lattice_) throw LatticeMismatch("diversity without a lattice");
  if (values_.size() != lattice_->size()) {
    throw LatticeMismatch("diversity has " + std::to_string(values_.size()) + " values for a lattice of " +
                          std::to_string(lattice_->size()) + " elements");
  }
}

const ValidationReport& DiversityFn::validate() {
  const FiniteLattice& L = *lattice_;
  const std::size_t n = L.size();
  ValidationReport report;

  auto record = [&](Axiom axiom, ElementSet witness, std::string message) {
    for (auto& v : report.violations) {
      if (v.axiom == axiom) {
        ++v.count;
        return;
      }
    }
    report.violations.push_back({axiom, std::move(witness), 1, std::move(message)});
  };

  for (Element a = 0; a < n; ++a) {
    if (sgn(values_[a]) < 0) {
      record(Axiom::nonnegative, {a}, "delta(" + L.name(a) + ") = " + to_string(values_[a]) + " < 0");
    }
  }
  for (Element a = 0; a < n; ++a) {
    const bool should_vanish = a == L.bottom() || L.is_atom(a);
    const bool vanishes = sgn(values_[a]) == 0;
    if (should_vanish != vanishes) {
      record(Axiom::zero_pattern, {a},
             should_vanish ? "delta(" + L.name(a) + ") must be 0 on the bottom and atoms"
                           : "delta(" + L.name(a) + ") = 0 but " + L.name(a) + " is neither bottom nor an atom");
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (a != b && L.leq(a, b) && values_[a] > values_[b]) {
        record(Axiom::monotone, {a, b},
               L.name(a) + " <= " + L.name(b) + " but delta(" + L.name(a) + ") = " + to_string(values_[a]) +
                   " > delta(" + L.name(b) + ") = " + to_string(values_[b]));
      }
    }
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      if (L.meet(a, b) == L.bottom()) continue;
      const Element j = L.join(a, b);
      if (values_[j] > values_[a] + values_[b]) {
        record(Axiom::subadditive, {a, b},
               "delta(" + L.name(a) + " v " + L.name(b) + ") = " + to_string(values_[j]) + " > delta(" +
                   L.name(a) + ") + delta(" + L.name(b) + ") = " + to_string(Rational(values_[a] + values_[b])));
      }
    }
  }

  report_ = std::move(report);
  validity_ = report_.ok() ? Validity::valid : Validity::invalid;
  return report_;
}

void DiversityFn::require_valid() const {
  if (validity_ == Validity::unchecked) throw NotValidated("diversity has not been validated");
  if (validity_ == Validity::invalid) {
    throw NotValidated("diversity failed validation: " + report_.violations.front().message);
  }
}

bool DiversityFn::is_strictly_monotone() const {
  const FiniteLattice& L = *lattice_;
  for (Element a = 1; a < L.size(); ++a) {
    for (Element b = 1; b < L.size(); ++b) {
      if (L.less(a, b) && !(values_[a] < values_[b])) return false;
    }
  }
  return true;
}

const ValidationReport& validate(DiversityFn& delta) { return delta.validate(); }

DiversityFn make_valid_diversity(LatticePtr lattice, std::vector<Rational> values) {
  DiversityFn delta(std::move(lattice), std::move(values));
  const auto& report = delta.validate();
  if (!report.ok()) throw ValidationError("not a lattice diversity: " + report.violations.front().message);
  return delta;
}

CheckResult triangle_scan(const FiniteLattice& L, std::span<const Rational> values) {
  if (values.size() != L.size()) throw LatticeMismatch("value count does not match lattice size");
  const std::size_t n = L.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 1; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        const Rational& lhs = values[L.join(a, c)];
        if (lhs > values[L.join(a, b)] + values[L.join(b, c)]) {
          return {false,
                  {a, b, c},
                  "delta(" + L.name(a) + " v " + L.name(c) + ") > delta(" + L.name(a) + " v " + L.name(b) +
                      ") + delta(" + L.name(b) + " v " + L.name(c) + ")"};
        }
      }
    }
  }
  return {};
}

CheckResult check_triangle(const DiversityFn& delta) {
  delta.require_valid();
  return triangle_scan(delta.lattice(), delta.values());
}

namespace {

// Visits every nondecreasing tuple over [0, alphabet) of the given length.
// Stops early when the visitor returns false.
bool for_each_multiset(std::size_t alphabet, std::size_t length,
                       const std::function<bool(const std::vector<Element>&)>& visit) {
  std::vector<Element> tuple(length, 0);
  if (length == 0) return visit(tuple);
  while (true) {
    if (!visit(tuple)) return false;
    std::size_t i = length;
    while (i > 0 && tuple[i - 1] + 1 == alphabet) --i;
    if (i == 0) return true;
    const Element next = tuple[i - 1] + 1;
    for (std::size_t k = i - 1; k < length; ++k) tuple[k] = next;
  }
}

std::size_t saturating_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

std::size_t multiset_count(std::size_t alphabet, std::size_t length, std::size_t cap) {
  // C(alphabet + length - 1, length), saturating at cap + 1.
  long double c = 1;
  for (std::size_t i = 1; i <= length; ++i) {
    c = c * static_cast<long double>(alphabet + i - 1) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(c + 0.5L);
}

std::string tuple_names(const FiniteLattice& L, const std::vector<Element>& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += L.name(tuple[i]);
  }
  return out + ")";
}

}  // namespace

CheckResult check_general_subadditivity(const DiversityFn& delta, std::size_t max_size, const Limits& limits) {
  delta.require_valid();
  if (max_size < 2) throw std::invalid_argument("general subadditivity needs tuples of size >= 2");
  const FiniteLattice& L = delta.lattice();
  std::size_t total = 0;
  for (std::size_t k = 2; k <= max_size; ++k) {
    total += multiset_count(L.size(), k, limits.max_tuples);
    if (total > limits.max_tuples) {
      throw SizeLimit("general subadditivity scan exceeds " + std::to_string(limits.max_tuples) + " tuples");
    }
  }

  CheckResult result;
  for (std::size_t k = 2; k <= max_size && result.holds; ++k) {
    for_each_multiset(L.size(), k, [&](const std::vector<Element>& tuple) {
      if (L.meet_set(tuple) == L.bottom()) return true;
      Rational sum = 0;
      for (Element e : tuple) sum += delta(e);
      if (delta(L.join_set(tuple)) > sum) {
        result = {false, tuple, "delta(join" + tuple_names(L, tuple) + ") exceeds the sum of its parts"};
        return false;
      }
      return true;
    });
  }
  return result;
}

std::optional<std::string> FiniteMetric::violation() const {
  const std::size_t n = size();
  if (dist.size() != n * n) return "distance table has the wrong size";
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn((*this)(i, i)) != 0) return "d(" + points[i] + "," + points[i] + ") != 0";
    for (std::size_t j = 0; j < n; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return "d(" + points[i] + "," + points[j] + ") is not symmetric";
      if (i != j && sgn((*this)(i, j)) <= 0) return "d(" + points[i] + "," + points[j] + ") is not positive";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if ((*this)(i, j) > (*this)(i, k) + (*this)(k, j)) {
          return "triangle inequality fails for (" + points[i] + "," + points[k] + "," + points[j] + ")";
        }
      }
    }
  }
  return std::nullopt;
}

FiniteMetric induced_metric(const DiversityFn& delta) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  const ElementSet& atoms = L.atoms();
  FiniteMetric metric;
  for (Element a : atoms) metric.points.push_back(L.name(a));
  metric.dist.reserve(atoms.size() * atoms.size());
  for (Element a : atoms) {
    for (Element b : atoms) metric.dist.push_back(delta(L.join(a, b)));
  }
  if (auto broken = metric.violation()) throw InternalError("induced metric is not a metric: " + *broken);
  return metric;
}

Rational nway_distance(const DiversityFn& delta, std::span<const Element> atoms) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  for (Element a : atoms) {
    if (a >= L.size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
    if (!L.is_atom(a)) throw NotAnAtom("'" + L.name(a) + "' is not an atom");
  }
  return delta(L.join_set(atoms));
}

CheckResult check_nway_axioms(const DiversityFn& delta, std::size_t n, const Limits& limits) {
  delta.require_valid();
  if (n < 2) throw std::invalid_argument("n-way distances need n >= 2");
  const FiniteLattice& L = delta.lattice();
  const ElementSet& atoms = L.atoms();
  const std::size_t m = atoms.size();
  if (saturating_pow(m, n + 1, limits.max_tuples) > limits.max_tuples) {
    throw SizeLimit("n-way axiom scan over " + std::to_string(m) + " atoms with n = " + std::to_string(n) +
                    " exceeds " + std::to_string(limits.max_tuples) + " tuples");
  }
  if (m == 0) return {};

  auto d = [&](const std::vector<Element>& tuple) -> const Rational& { return delta(L.join_set(tuple)); };
  auto fail = [&](std::vector<Element> tuple, std::string what) {
    return CheckResult{false, std::move(tuple), what};
  };

  // Counter over atom-index tuples of a given length, lexicographic.
  auto for_each_tuple = [&](std::size_t length, const std::function<bool(const std::vector<Element>&)>& visit) {
    std::vector<std::size_t> idx(length, 0);
    std::vector<Element> tuple(length, atoms[0]);
    while (true) {
      if (!visit(tuple)) return false;
      std::size_t i = length;
      while (i > 0 && idx[i - 1] + 1 == m) {
        idx[i - 1] = 0;
        tuple[i - 1] = atoms[0];
        --i;
      }
      if (i == 0) return true;
      ++idx[i - 1];
      tuple[i - 1] = atoms[idx[i - 1]];
    }
  };

  CheckResult result;
  for_each_tuple(n, [&](const std::vector<Element>& x) {
    const Rational& base = d(x);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<Element> swapped = x;
      std::swap(swapped[i], swapped[i + 1]);
      if (d(swapped) != base) {
        result = fail(x, "not totally symmetric");
        return false;
      }
    }
    if (std::all_of(x.begin(), x.end(), [&](Element e) { return e == x[0]; }) && sgn(base) != 0) {
      result = fail(x, "d(x,...,x) != 0");
      return false;
    }
    if (n >= 3) {
      std::vector<Element> first_doubled = x;
      first_doubled[1] = x[0];
      std::vector<Element> third_doubled = x;
      third_doubled[1] = x[2];
      if (d(first_doubled) != d(third_doubled) || d(first_doubled) > base) {
        result = fail(x, "d(x1,x1,x3,...) = d(x1,x3,x3,...) <= d(x1,x2,x3,...) fails");
        return false;
      }
    }
    return true;
  });
  if (!result.holds) return result;

  for_each_tuple(n + 1, [&](const std::vector<Element>& x) {
    const std::vector<Element> head(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    Rational sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Element> dropped;
      dropped.reserve(n);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k != i) dropped.push_back(x[k]);
      }
      sum += d(dropped);
    }
    if (d(head) > sum) {
      result = fail(x, "simplex inequality fails");
      return false;
    }
    return true;
  });
  return result;
}

}  // namespace latdiv
