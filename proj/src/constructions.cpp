#include "latdiv/constructions.hpp"

#include "latdiv/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>

namespace latdiv {

namespace {

// Orders member bitmasks by size, then by member list in ground-set order.
bool subset_before(std::uint64_t x, std::uint64_t y) {
  const int cx = std::popcount(x);
  const int cy = std::popcount(y);
  if (cx != cy) return cx < cy;
  const std::uint64_t diff = x ^ y;
  if (diff == 0) return false;
  return (x >> std::countr_zero(diff)) & 1U;
}

std::string subset_name(const std::vector<std::string>& points, std::uint64_t mask) {
  std::vector<std::string> members;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if ((mask >> i) & 1U) members.push_back(points[i]);
  }
  return set_name(members);
}

// Lattice of a union/intersection-closed family of subsets, ordered by inclusion.
FiniteLattice family_lattice(const std::vector<std::string>& points, std::vector<std::uint64_t> family,
                             const Limits& limits) {
  std::sort(family.begin(), family.end(), subset_before);
  std::vector<std::string> names;
  names.reserve(family.size());
  for (std::uint64_t s : family) names.push_back(subset_name(points, s));
  std::vector<NamePair> covers;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      const std::uint64_t a = family[i];
      const std::uint64_t b = family[j];
      if (a == b || (a & b) != a) continue;
      const bool between = std::any_of(family.begin(), family.end(), [&](std::uint64_t c) {
        return c != a && c != b && (a & c) == a && (c & b) == c;
      });
      if (!between) covers.emplace_back(names[i], names[j]);
    }
  }
  return FiniteLattice::from_covers(names, covers, limits);
}

// For constructions whose validity is a theorem; failure means a bug here.
DiversityFn theorem_backed(const LatticePtr& lattice, std::vector<Rational> values, const char* what) {
  DiversityFn delta(lattice, std::move(values));
  const auto& report = delta.validate();
  if (!report.ok()) {
    throw InternalError(std::string(what) + " produced an invalid diversity: " + report.violations.front().message);
  }
  return delta;
}

std::uint64_t parse_divisor(const std::string& name) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc{} || ptr != name.data() + name.size() || value == 0) {
    throw std::invalid_argument("'" + name + "' is not a divisor-lattice element");
  }
  return value;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

FiniteLattice m3_lattice() {
  return FiniteLattice::from_covers({"0", "a1", "a2", "a3", "a4"}, {{"0", "a1"},
                                                                    {"0", "a2"},
                                                                    {"0", "a3"},
                                                                    {"a1", "a4"},
                                                                    {"a2", "a4"},
                                                                    {"a3", "a4"}});
}

FiniteLattice n5_lattice() {
  return FiniteLattice::from_covers({"0", "a1", "a2", "a3", "a4"},
                                    {{"0", "a1"}, {"a1", "a3"}, {"a3", "a4"}, {"0", "a2"}, {"a2", "a4"}});
}

FiniteLattice chain_lattice(std::size_t length) {
  std::vector<std::string> names{"0"};
  std::vector<NamePair> covers;
  for (std::size_t i = 1; i <= length; ++i) {
    names.push_back("a" + std::to_string(i));
    covers.emplace_back(names[i - 1], names[i]);
  }
  return FiniteLattice::from_covers(names, covers);
}

FiniteLattice powerset_lattice(const std::vector<std::string>& points, const Limits& limits) {
  if (points.size() >= 63 || (std::size_t{1} << points.size()) > limits.max_lattice_elements) {
    throw SizeLimit("powerset of " + std::to_string(points.size()) + " points exceeds the lattice size limit");
  }
  std::vector<std::uint64_t> family;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << points.size()); ++s) family.push_back(s);
  return family_lattice(points, std::move(family), limits);
}

FiniteLattice powerset_lattice(std::size_t n, const Limits& limits) {
  std::vector<std::string> points;
  for (std::size_t i = 1; i <= n; ++i) points.push_back(std::to_string(i));
  return powerset_lattice(points, limits);
}

unsigned prime_omega(std::uint64_t n) {
  unsigned total = 0;
  for (const auto& [p, e] : factorize(n)) total += e;
  return total;
}

FiniteLattice divisor_lattice(std::uint64_t n, const Limits& limits) {
  if (n == 0) throw std::invalid_argument("divisor lattice needs n >= 1");
  const auto factors = factorize(n);
  std::size_t count = 1;
  for (const auto& [p, e] : factors) {
    count *= e + 1;
    if (count > limits.max_lattice_elements) {
      throw SizeLimit(std::to_string(n) + " has more divisors than the lattice size limit");
    }
  }
  std::vector<std::uint64_t> divisors{1};
  for (const auto& [p, e] : factors) {
    const std::size_t before = divisors.size();
    std::uint64_t power = 1;
    for (unsigned k = 1; k <= e; ++k) {
      power *= p;
      for (std::size_t i = 0; i < before; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  std::vector<std::string> names;
  for (auto d : divisors) names.push_back(std::to_string(d));
  std::vector<NamePair> covers;
  for (auto d : divisors) {
    for (const auto& [p, e] : factors) {
      if ((n / d) % p == 0) covers.emplace_back(std::to_string(d), std::to_string(d * p));
    }
  }
  return FiniteLattice::from_covers(names, covers, limits);
}

FiniteLattice multiset_lattice(const std::vector<std::string>& points, const std::vector<unsigned>& caps,
                               const Limits& limits) {
  if (points.size() != caps.size()) throw std::invalid_argument("one cap per point is required");
  std::size_t count = 1;
  for (unsigned c : caps) {
    if (c < 1) throw std::invalid_argument("multiset caps must be >= 1");
    if (count > limits.max_lattice_elements / (c + 1)) {
      throw SizeLimit("multiset lattice exceeds the lattice size limit");
    }
    count *= c + 1;
  }

  std::vector<std::vector<unsigned>> multisets;
  std::vector<unsigned> k(points.size(), 0);
  while (true) {
    multisets.push_back(k);
    std::size_t i = points.size();
    while (i > 0 && k[i - 1] == caps[i - 1]) k[--i] = 0;
    if (i == 0) break;
    ++k[i - 1];
  }
  std::stable_sort(multisets.begin(), multisets.end(), [](const auto& x, const auto& y) {
    unsigned sx = 0, sy = 0;
    for (unsigned v : x) sx += v;
    for (unsigned v : y) sy += v;
    if (sx != sy) return sx < sy;
    return x > y;
  });

  auto name_of = [&](const std::vector<unsigned>& m) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (m[i] > 0) parts.push_back(points[i] + "^" + std::to_string(m[i]));
    }
    return set_name(parts);
  };
  std::vector<std::string> names;
  std::vector<NamePair> covers;
  for (const auto& m : multisets) names.push_back(name_of(m));
  for (const auto& m : multisets) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (m[i] == caps[i]) continue;
      auto up = m;
      ++up[i];
      covers.emplace_back(name_of(m), name_of(up));
    }
  }
  return FiniteLattice::from_covers(names, covers, limits);
}

std::vector<unsigned> multiset_counts(const FiniteLattice& lattice, Element a, const std::vector<std::string>& points) {
  const std::string& name = lattice.name(a);
  if (name.size() < 2 || name.front() != '{' || name.back() != '}') {
    throw std::invalid_argument("'" + name + "' is not a multiset element");
  }
  std::vector<unsigned> counts(points.size(), 0);
  const std::string body = name.substr(1, name.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    const std::string part = body.substr(pos, end - pos);
    const auto caret = part.rfind('^');
    if (caret == std::string::npos) throw std::invalid_argument("'" + name + "' is not a multiset element");
    const auto it = std::find(points.begin(), points.end(), part.substr(0, caret));
    if (it == points.end()) throw std::invalid_argument("'" + name + "' names an unknown point");
    counts[static_cast<std::size_t>(it - points.begin())] = static_cast<unsigned>(std::stoul(part.substr(caret + 1)));
    pos = end + 1;
  }
  return counts;
}

DiversityFn trivial_diversity(const LatticePtr& lattice) {
  const FiniteLattice& L = *lattice;
  std::vector<Rational> values(L.size(), 1);
  values[L.bottom()] = 0;
  for (Element a : L.atoms()) values[a] = 0;
  return theorem_backed(lattice, std::move(values), "trivial_diversity");
}

DiversityFn height_diversity(const LatticePtr& lattice) {
  const FiniteLattice& L = *lattice;
  if (auto w = modularity_violation(L)) {
    throw NotModular("lattice is not modular: witness (" + L.name(w->a) + ", " + L.name(w->b) + ", " +
                     L.name(w->c) + ")");
  }
  std::vector<Rational> values(L.size(), 0);
  for (Element a = 1; a < L.size(); ++a) values[a] = static_cast<long>(L.height(a)) - 1;
  return theorem_backed(lattice, std::move(values), "height_diversity");
}

DiversityFn cardinality_diversity(const LatticePtr& lattice) {
  const FiniteLattice& L = *lattice;
  if (auto w = modularity_violation(L)) {
    throw NotModular("lattice is not modular: witness (" + L.name(w->a) + ", " + L.name(w->b) + ", " +
                     L.name(w->c) + ")");
  }
  std::vector<Rational> values(L.size(), 0);
  for (Element a = 1; a < L.size(); ++a) {
    if (!L.is_atom(a)) values[a] = static_cast<unsigned long>(L.height(a));
  }
  return theorem_backed(lattice, std::move(values), "cardinality_diversity");
}

DiversityFn m3_diversity(const Rational& alpha) {
  if (sgn(alpha) <= 0) throw std::invalid_argument("M3 diversity needs alpha > 0");
  auto L = share(m3_lattice());
  std::vector<Rational> values(5, 0);
  values[L->index("a4")] = alpha;
  return theorem_backed(L, std::move(values), "m3_diversity");
}

DiversityFn n5_diversity(const Rational& alpha, const Rational& beta) {
  if (sgn(alpha) <= 0 || alpha > beta) throw std::invalid_argument("N5 diversity needs 0 < alpha <= beta");
  auto L = share(n5_lattice());
  std::vector<Rational> values(5, 0);
  values[L->index("a3")] = alpha;
  values[L->index("a4")] = beta;
  return theorem_backed(L, std::move(values), "n5_diversity");
}

void check_positive_subvaluation(const Valuation& v) {
  const FiniteLattice& L = *v.lattice;
  if (v.values.size() != L.size()) throw LatticeMismatch("valuation size does not match the lattice");
  if (sgn(v.values[L.bottom()]) != 0) {
    throw NonzeroAtBottom("v(" + L.name(L.bottom()) + ") = " + to_string(v.values[L.bottom()]) + " != 0");
  }
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = 0; b < L.size(); ++b) {
      if (L.less(a, b) && !(v.values[a] < v.values[b])) {
        throw NotPositive(L.name(a) + " < " + L.name(b) + " but v(" + L.name(a) + ") = " + to_string(v.values[a]) +
                          " >= v(" + L.name(b) + ") = " + to_string(v.values[b]));
      }
    }
  }
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = a + 1; b < L.size(); ++b) {
      if (v.values[L.meet(a, b)] + v.values[L.join(a, b)] > v.values[a] + v.values[b]) {
        throw NotASubValuation("v(" + L.name(a) + " ^ " + L.name(b) + ") + v(" + L.name(a) + " v " + L.name(b) +
                               ") > v(" + L.name(a) + ") + v(" + L.name(b) + ")");
      }
    }
  }
}

bool is_valuation(const Valuation& v) {
  const FiniteLattice& L = *v.lattice;
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = a + 1; b < L.size(); ++b) {
      if (v.values[L.meet(a, b)] + v.values[L.join(a, b)] != v.values[a] + v.values[b]) return false;
    }
  }
  return true;
}

DiversityFn valuation_diversity(const Valuation& v) {
  check_positive_subvaluation(v);
  const FiniteLattice& L = *v.lattice;
  std::vector<Rational> values = v.values;
  for (Element a : L.atoms()) values[a] = 0;
  return theorem_backed(v.lattice, std::move(values), "valuation_diversity");
}

Valuation omega_valuation(const LatticePtr& divisors) {
  Valuation v{divisors, {}};
  for (const auto& name : divisors->names()) v.values.emplace_back(prime_omega(parse_divisor(name)));
  return v;
}

DiversityFn omega_diversity(const LatticePtr& divisors) {
  std::vector<Rational> values;
  for (const auto& name : divisors->names()) {
    const unsigned omega = prime_omega(parse_divisor(name));
    values.emplace_back(omega == 1 ? 0U : omega);
  }
  return theorem_backed(divisors, std::move(values), "omega_diversity");
}

DiversityFn multiset_diversity(const LatticePtr& lattice, const std::vector<unsigned>& caps,
                               const FiniteMetric& metric, const ChainTables& chains) {
  const std::vector<std::string>& points = metric.points;
  if (caps.size() != points.size() || chains.size() != points.size()) {
    throw std::invalid_argument("caps, metric and chain tables must cover the same points");
  }
  if (auto broken = metric.violation()) throw ValidationError("multiset ground metric: " + *broken);
  for (std::size_t x = 0; x < points.size(); ++x) {
    const auto& f = chains[x];
    const std::string who = "chain function for '" + points[x] + "'";
    if (f.size() < static_cast<std::size_t>(caps[x]) + 1) {
      throw BadChainFunction(who + " has " + std::to_string(f.size()) + " entries, cap " + std::to_string(caps[x]) +
                             " needs " + std::to_string(caps[x] + 1));
    }
    if (f.size() < 2 || sgn(f[0]) != 0 || sgn(f[1]) != 0) throw BadChainFunction(who + " must vanish at 0 and 1");
    for (std::size_t k = 2; k < f.size(); ++k) {
      if (sgn(f[k]) <= 0) throw BadChainFunction(who + " must be positive from 2 on");
      if (f[k] < f[k - 1]) throw BadChainFunction(who + " must be nondecreasing");
    }
  }

  const FiniteLattice& L = *lattice;
  std::vector<Rational> values(L.size(), 0);
  for (Element a = 0; a < L.size(); ++a) {
    const auto k = multiset_counts(L, a, points);
    Rational best = 0;
    for (std::size_t x = 0; x < points.size(); ++x) {
      if (k[x] == 0) continue;
      if (chains[x][k[x]] > best) best = chains[x][k[x]];
      for (std::size_t y = 0; y < points.size(); ++y) {
        if (k[y] > 0 && metric(x, y) > best) best = metric(x, y);
      }
    }
    values[a] = best;
  }
  return make_valid_diversity(lattice, std::move(values));
}

ClassicalDiversity diameter_diversity(const FiniteMetric& metric) {
  return {metric.points, [metric](std::uint64_t mask) {
            Rational best = 0;
            for (std::size_t i = 0; i < metric.size(); ++i) {
              if (!((mask >> i) & 1U)) continue;
              for (std::size_t j = 0; j < metric.size(); ++j) {
                if (((mask >> j) & 1U) && metric(i, j) > best) best = metric(i, j);
              }
            }
            return best;
          }};
}

DiversityFn restrict_classical(const ClassicalDiversity& diversity, const std::vector<std::uint64_t>& family) {
  const auto& points = diversity.points;
  std::vector<std::uint64_t> sets = family;
  std::sort(sets.begin(), sets.end(), subset_before);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (std::find(sets.begin(), sets.end(), 0) == sets.end()) {
    throw NotASublattice("family does not contain the empty set");
  }
  auto contains = [&](std::uint64_t s) { return std::binary_search(sets.begin(), sets.end(), s, subset_before); };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const std::uint64_t a = sets[i];
      const std::uint64_t b = sets[j];
      if (!contains(a | b)) {
        throw NotASublattice("union of " + subset_name(points, a) + " and " + subset_name(points, b) +
                             " is missing");
      }
      if (!contains(a & b)) {
        throw NotASublattice("intersection of " + subset_name(points, a) + " and " + subset_name(points, b) +
                             " is missing");
      }
    }
  }
  auto lattice = share(family_lattice(points, sets, {}));
  std::vector<Rational> values(lattice->size());
  for (std::uint64_t s : sets) values[lattice->index(subset_name(points, s))] = diversity.value(s);
  return make_valid_diversity(lattice, std::move(values));
}

}  // namespace latdiv
