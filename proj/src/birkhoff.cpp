#include "latdiv/birkhoff.hpp"

#include "latdiv/errors.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace latdiv {

namespace {

std::uint64_t eta_mask(const FiniteLattice& L, const ElementSet& jirr, Element a) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < jirr.size(); ++i) {
    if (L.leq(jirr[i], a)) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::string mask_names(const FiniteLattice& L, const ElementSet& jirr, std::uint64_t mask) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < jirr.size(); ++i) {
    if ((mask >> i) & 1U) names.push_back(L.name(jirr[i]));
  }
  return set_name(names);
}

void require_distributive(const FiniteLattice& L) {
  if (auto w = distributivity_violation(L)) {
    throw NotDistributive("lattice is not distributive: witness (" + L.name(w->a) + ", " + L.name(w->b) + ", " +
                          L.name(w->c) + ")");
  }
}

}  // namespace

ElementSet BirkhoffRepresentation::eta_set(Element a) const {
  ElementSet out;
  for (Element j : jirr) {
    if (source->leq(j, a)) out.push_back(j);
  }
  return out;
}

ElementSet join_irreducibles_by_definition(const FiniteLattice& L) {
  ElementSet out;
  for (Element a = 1; a < L.size(); ++a) {
    bool irreducible = true;
    for (Element b = 0; b < L.size() && irreducible; ++b) {
      for (Element c = 0; c < L.size(); ++c) {
        if (L.join(b, c) == a && b != a && c != a) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) out.push_back(a);
  }
  return out;
}

BirkhoffRepresentation representation(const LatticePtr& lattice, const Limits& limits) {
  const FiniteLattice& L = *lattice;
  require_distributive(L);

  BirkhoffRepresentation rep;
  rep.source = lattice;
  rep.jirr = L.join_irreducibles();
  if (L.size() <= 10 && join_irreducibles_by_definition(L) != rep.jirr) {
    throw InternalError("one-lower-cover join-irreducibles disagree with the definition");
  }
  rep.jirr_poset = induced_poset(L, rep.jirr);
  DownsetLattice downsets = build_downsets(rep.jirr_poset, limits);
  rep.target = share(std::move(downsets.lattice));
  rep.target_members = std::move(downsets.members);

  std::unordered_map<std::uint64_t, Element> by_mask;
  for (Element t = 0; t < rep.target->size(); ++t) by_mask.emplace(rep.target_members[t], t);

  auto fail = [](const std::string& what) { throw InternalError("Birkhoff isomorphism check failed: " + what); };
  if (rep.target->size() != L.size()) {
    fail("|L| = " + std::to_string(L.size()) + " but O(J(L)) has " + std::to_string(rep.target->size()) +
         " elements");
  }

  rep.eta.resize(L.size());
  for (Element a = 0; a < L.size(); ++a) {
    const auto it = by_mask.find(eta_mask(L, rep.jirr, a));
    if (it == by_mask.end()) fail("eta(" + L.name(a) + ") is not a lower set of J(L)");
    rep.eta[a] = it->second;
  }
  rep.eta_inv.resize(rep.target->size());
  for (Element t = 0; t < rep.target->size(); ++t) {
    ElementSet members;
    for (std::size_t i = 0; i < rep.jirr.size(); ++i) {
      if ((rep.target_members[t] >> i) & 1U) members.push_back(rep.jirr[i]);
    }
    rep.eta_inv[t] = L.join_set(members);
  }

  for (Element a = 0; a < L.size(); ++a) {
    if (rep.eta_inv[rep.eta[a]] != a) fail("eta_inv(eta(" + L.name(a) + ")) != " + L.name(a));
    for (Element b = 0; b < L.size(); ++b) {
      const std::uint64_t ma = rep.target_members[rep.eta[a]];
      const std::uint64_t mb = rep.target_members[rep.eta[b]];
      if (rep.target_members[rep.eta[L.join(a, b)]] != (ma | mb)) {
        fail("eta(" + L.name(a) + " v " + L.name(b) + ") != eta(" + L.name(a) + ") u eta(" + L.name(b) + ")");
      }
      if (rep.target_members[rep.eta[L.meet(a, b)]] != (ma & mb)) {
        fail("eta(" + L.name(a) + " ^ " + L.name(b) + ") != eta(" + L.name(a) + ") n eta(" + L.name(b) + ")");
      }
    }
  }
  for (Element t = 0; t < rep.target->size(); ++t) {
    if (rep.eta[rep.eta_inv[t]] != t) fail("eta(eta_inv(" + rep.target->name(t) + ")) != " + rep.target->name(t));
  }
  return rep;
}

Rational hat_delta(const DiversityFn& delta, const ElementSet& subset) {
  delta.require_valid();
  const FiniteLattice& L = delta.lattice();
  for (Element a : subset) {
    if (a >= L.size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
    if (!L.is_join_irreducible(a)) throw NotInJ("'" + L.name(a) + "' is not join-irreducible");
  }
  ElementSet distinct = subset;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) return 0;
  return delta(L.join_set(distinct));
}

ExtensionReport verify_extension_theorem(const DiversityFn& delta, std::size_t max_jirr) {
  const FiniteLattice& L = delta.lattice();
  require_distributive(L);
  delta.require_valid();
  const ElementSet& jirr = L.join_irreducibles();
  const std::size_t k = jirr.size();
  if (k > max_jirr || k >= 31) {
    throw SizeLimit("|J(L)| = " + std::to_string(k) + " exceeds the extension-check limit of " +
                    std::to_string(max_jirr));
  }

  const std::uint64_t full = std::uint64_t{1} << k;
  std::vector<Rational> hv(full);
  for (std::uint64_t mask = 0; mask < full; ++mask) {
    ElementSet members;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1U) members.push_back(jirr[i]);
    }
    hv[mask] = hat_delta(delta, members);
  }

  ExtensionReport report;
  report.subsets_checked = full;
  auto name = [&](std::uint64_t m) { return mask_names(L, jirr, m); };

  for (std::uint64_t a = 0; a < full; ++a) {
    if ((sgn(hv[a]) == 0) != (std::popcount(a) <= 1)) {
      report.failures.push_back("zero pattern: hat_delta(" + name(a) + ") = " + to_string(hv[a]));
      break;
    }
  }

  [&] {
    for (std::uint64_t b = 0; b < full; ++b) {
      for (std::uint64_t a = b;; a = (a - 1) & b) {
        if (hv[a] > hv[b]) {
          report.failures.push_back("monotonicity: hat_delta(" + name(a) + ") > hat_delta(" + name(b) + ")");
          return;
        }
        if (a == 0) break;
      }
    }
  }();

  [&] {
    for (std::uint64_t a = 1; a < full; ++a) {
      for (std::uint64_t b = 1; b < full; ++b) {
        if ((a & b) == 0) continue;
        if (hv[a | b] > hv[a] + hv[b]) {
          report.failures.push_back("subadditivity: hat_delta(" + name(a) + " u " + name(b) + ") > hat_delta(" +
                                    name(a) + ") + hat_delta(" + name(b) + ")");
          return;
        }
      }
    }
  }();

  for (Element a = 0; a < L.size(); ++a) {
    const std::uint64_t m = eta_mask(L, jirr, a);
    if (hv[m] != delta(a)) {
      report.failures.push_back("restriction: hat_delta(eta(" + L.name(a) + ")) = " + to_string(hv[m]) +
                                " but delta(" + L.name(a) + ") = " + to_string(delta(a)));
      break;
    }
  }

  if (k <= 6) {
    report.triangle_checked = true;
    [&] {
      for (std::uint64_t a = 0; a < full; ++a) {
        for (std::uint64_t b = 1; b < full; ++b) {
          for (std::uint64_t c = 0; c < full; ++c) {
            if (hv[a | c] > hv[a | b] + hv[b | c]) {
              report.failures.push_back("triangle: hat_delta(" + name(a) + " u " + name(c) + ") > hat_delta(" +
                                        name(a) + " u " + name(b) + ") + hat_delta(" + name(b) + " u " + name(c) +
                                        ")");
              return;
            }
          }
        }
      }
    }();
  }
  return report;
}

}  // namespace latdiv
