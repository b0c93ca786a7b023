#include "latdiv/birkhoff.hpp"
#include "latdiv/constructions.hpp"
#include "latdiv/errors.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace latdiv;

namespace {

ElementSet by_name(const FiniteLattice& L, std::initializer_list<const char*> names) {
  ElementSet out;
  for (const char* n : names) out.push_back(L.index(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("representation of the Boolean lattice") {
  const LatticePtr p3 = share(powerset_lattice(3));
  const BirkhoffRepresentation rep = representation(p3);
  CHECK(rep.jirr == p3->atoms());
  CHECK(rep.jirr_poset.covers.empty());
  CHECK(rep.target->size() == 8);
  CHECK(rep.eta_set(p3->index("{1,3}")) == by_name(*p3, {"{1}", "{3}"}));
  for (Element a = 0; a < p3->size(); ++a) CHECK(rep.eta_inv[rep.eta[a]] == a);
}

TEST_CASE("representation of the divisors of 12") {
  const LatticePtr d12 = share(divisor_lattice(12));
  const BirkhoffRepresentation rep = representation(d12);
  CHECK(rep.jirr == by_name(*d12, {"2", "3", "4"}));
  CHECK(rep.jirr_poset.covers == std::vector<NamePair>{{"2", "4"}});
  CHECK(rep.eta_set(d12->index("6")) == by_name(*d12, {"2", "3"}));
  CHECK(rep.eta_set(d12->index("12")) == by_name(*d12, {"2", "3", "4"}));
  CHECK(rep.target->name(rep.eta[d12->index("12")]) == "{2,3,4}");
  CHECK(rep.target->size() == d12->size());
}

TEST_CASE("representation rejects non-distributive lattices") {
  CHECK_THROWS_AS(representation(share(m3_lattice())), NotDistributive);
  CHECK_THROWS_AS(representation(share(n5_lattice())), NotDistributive);
}

TEST_CASE("join-irreducibles agree with the definition") {
  latdiv::testing::Rng rng(5);
  for (const auto& entry : latdiv::testing::lattice_suite(10)) {
    CHECK(join_irreducibles_by_definition(*entry.lattice) == entry.lattice->join_irreducibles());
  }
  for (int i = 0; i < 10; ++i) {
    const LatticePtr L = latdiv::testing::random_closure_lattice(rng, 4, 3);
    CHECK(join_irreducibles_by_definition(*L) == L->join_irreducibles());
  }
}

TEST_CASE("hat_delta") {
  const LatticePtr d12 = share(divisor_lattice(12));
  const DiversityFn om = omega_diversity(d12);
  CHECK(hat_delta(om, {}) == 0);
  CHECK(hat_delta(om, by_name(*d12, {"4"})) == 0);
  CHECK(hat_delta(om, by_name(*d12, {"2", "3"})) == 2);
  CHECK(hat_delta(om, by_name(*d12, {"2", "4"})) == 2);
  CHECK(hat_delta(om, by_name(*d12, {"2", "3", "4"})) == 3);
  CHECK_THROWS_AS(hat_delta(om, by_name(*d12, {"2", "6"})), NotInJ);
}

TEST_CASE("verify_extension_theorem") {
  const LatticePtr d12 = share(divisor_lattice(12));
  const ExtensionReport r = verify_extension_theorem(omega_diversity(d12));
  CHECK(r.ok());
  CHECK(r.subsets_checked == 8);
  CHECK(r.triangle_checked);

  const LatticePtr p3 = share(powerset_lattice(3));
  const DiversityFn dh = height_diversity(p3);
  CHECK(verify_extension_theorem(dh).ok());
  // hat_delta on sets of singletons is |A| - 1.
  CHECK(hat_delta(dh, by_name(*p3, {"{1}", "{2}", "{3}"})) == 2);

  latdiv::testing::Rng rng(13);
  const LatticePtr chain = share(chain_lattice(3));
  for (int i = 0; i < 5; ++i) CHECK(verify_extension_theorem(latdiv::testing::random_diversity(rng, chain)).ok());

  CHECK_THROWS_AS(verify_extension_theorem(m3_diversity(1)), NotDistributive);
  DiversityFn unchecked(d12, omega_diversity(d12).values());
  CHECK_THROWS_AS(verify_extension_theorem(unchecked), NotValidated);
  CHECK_THROWS_AS(verify_extension_theorem(omega_diversity(d12), 2), SizeLimit);
}

TEST_CASE("extension theorem on random distributive lattices") {
  latdiv::testing::Rng rng(17);
  for (int i = 0; i < 25; ++i) {
    const LatticePtr L = latdiv::testing::random_distributive_lattice(rng, 5);
    const BirkhoffRepresentation rep = representation(L);
    CHECK(rep.target->size() == L->size());
    const ExtensionReport r = verify_extension_theorem(latdiv::testing::random_diversity(rng, L));
    CHECK(r.ok());
  }
}
