#include "latdiv/constructions.hpp"
#include "latdiv/errors.hpp"
#include "latdiv/polyhedron.hpp"
#include "latdiv/tightspan.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

using namespace latdiv;
using latdiv::testing::Rng;

namespace {

std::vector<Rational> q(std::initializer_list<const char*> literals) {
  std::vector<Rational> out;
  for (const char* s : literals) out.push_back(parse_rational(s));
  return out;
}

ElementSet by_name(const FiniteLattice& L, std::initializer_list<const char*> names) {
  ElementSet out;
  for (const char* n : names) out.push_back(L.index(n));
  std::sort(out.begin(), out.end());
  return out;
}

LatticeFunction fn(const DiversityFn& delta, std::vector<Rational> values) {
  return LatticeFunction(delta.lattice_ptr(), std::move(values));
}

}  // namespace

TEST_CASE("LatticeFunction") {
  const DiversityFn delta = m3_diversity(1);
  CHECK_THROWS_AS(fn(delta, {0, 0}), LatticeMismatch);
  CHECK_THROWS_AS(fn(delta, {0, 0, 0, 0, -1}), std::invalid_argument);
  CHECK(fn(delta, {0, 0, 1, 1, 1}).below(fn(delta, {0, 1, 1, 1, 1})));
  CHECK_FALSE(fn(delta, {0, 1, 1, 1, 1}).below(fn(delta, {0, 0, 1, 1, 1})));
}

TEST_CASE("antichains") {
  const auto all = antichains(m3_lattice());
  CHECK(all.size() == 9);
  CHECK(all.front().empty());
  CHECK(std::is_sorted(all.begin(), all.end()));
  CHECK(antichains(chain_lattice(3)).size() == 4);
  CHECK(antichains(chain_lattice(0)).size() == 1);
}

TEST_CASE("constraint_system") {
  SUBCASE("N5") {
    const DiversityFn delta = n5_diversity(1, 2);
    const FiniteLattice& L = delta.lattice();
    const ConstraintSystem C = constraint_system(delta);
    REQUIRE(C.constraints.size() == 4);
    CHECK(C.constraints[0].support == by_name(L, {"a1", "a2"}));
    CHECK(C.constraints[0].rhs == 2);
    CHECK(C.constraints[1].support == by_name(L, {"a2", "a3"}));
    CHECK(C.constraints[1].rhs == 2);
    CHECK(C.constraints[2].support == by_name(L, {"a3"}));
    CHECK(C.constraints[2].rhs == 1);
    CHECK(C.constraints[3].support == by_name(L, {"a4"}));
    CHECK(C.constraints[3].rhs == 2);
    CHECK(C.containing(L.index("a2")) == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("M3") {
    const DiversityFn delta = m3_diversity(Rational(5, 3));
    const FiniteLattice& L = delta.lattice();
    const ConstraintSystem C = constraint_system(delta);
    REQUIRE(C.constraints.size() == 4);
    CHECK(C.constraints[0].support == by_name(L, {"a1", "a2"}));
    CHECK(C.constraints[1].support == by_name(L, {"a1", "a3"}));
    CHECK(C.constraints[2].support == by_name(L, {"a2", "a3"}));
    CHECK(C.constraints[3].support == by_name(L, {"a4"}));
    for (const auto& c : C.constraints) CHECK(c.rhs == Rational(5, 3));
  }
  SUBCASE("single point") {
    const DiversityFn delta = trivial_diversity(share(chain_lattice(0)));
    CHECK(constraint_system(delta).constraints.empty());
  }
  SUBCASE("errors") {
    DiversityFn unchecked(share(m3_lattice()), {0, 0, 0, 0, 1});
    CHECK_THROWS_AS(constraint_system(unchecked), NotValidated);
    TightSpanOptions small;
    small.max_constraint_lattice = 4;
    CHECK_THROWS_AS(constraint_system(m3_diversity(1), small), SizeLimit);
  }
  SUBCASE("supports are irredundant antichains") {
    Rng rng(1);
    for (const auto& entry : latdiv::testing::lattice_suite(8)) {
      const DiversityFn delta = latdiv::testing::random_diversity(rng, entry.lattice);
      const FiniteLattice& L = delta.lattice();
      for (const auto& c : constraint_system(delta).constraints) {
        CHECK_FALSE(c.support.empty());
        CHECK(c.rhs == delta(L.join_set(c.support)));
        for (Element x : c.support) {
          CHECK(x != L.bottom());
          for (Element y : c.support) CHECK((x == y || !L.comparable(x, y)));
        }
      }
    }
  }
}

TEST_CASE("in_PL") {
  const DiversityFn delta = m3_diversity(1);
  const ConstraintSystem C = constraint_system(delta);
  CHECK(in_PL(kappa(delta, 1), C).member);
  const PLMembership own = in_PL(fn(delta, delta.values()), C);
  CHECK_FALSE(own.member);
  REQUIRE(own.violated.has_value());
  CHECK(C.constraints[*own.violated].support == ElementSet{1, 2});
  CHECK(in_PL(fn(delta, {7, 7, 7, 7, 7}), C).member);
  CHECK_THROWS_AS(in_PL(LatticeFunction(share(chain_lattice(4)), {0, 0, 0, 0, 0}), C), LatticeMismatch);
}

TEST_CASE("in_TL") {
  const DiversityFn m3 = m3_diversity(1);
  const ConstraintSystem C = constraint_system(m3);
  const TLMembership v1 = in_TL(fn(m3, {0, 0, 1, 1, 1}), C);
  CHECK(v1.member);
  REQUIRE(v1.certificate.size() == 5);
  CHECK(v1.certificate[0].kind == Tightness::Kind::zero_bound);
  CHECK(v1.certificate[1].kind == Tightness::Kind::zero_bound);
  CHECK(v1.certificate[2].kind == Tightness::Kind::constraint);
  const Constraint& tight = C.constraints[v1.certificate[2].constraint];
  Rational sum = 0;
  for (Element b : tight.support) sum += fn(m3, {0, 0, 1, 1, 1})(b);
  CHECK(sum == tight.rhs);

  const TLMembership slack = in_TL(fn(m3, {0, 1, 1, 1, 1}), C);
  CHECK_FALSE(slack.member);
  CHECK(slack.pl.member);
  CHECK(slack.slack == Element{1});

  const DiversityFn n5 = n5_diversity(1, 2);
  CHECK(in_TL(fn(n5, {0, 1, 1, 1, 2}), constraint_system(n5)).member);
  CHECK_FALSE(in_TL(fn(n5, {0, 0, 0, 1, 2}), constraint_system(n5)).member);
}

TEST_CASE("minimize") {
  const DiversityFn m3 = m3_diversity(1);
  const ConstraintSystem C = constraint_system(m3);
  const LatticeFunction g = minimize(fn(m3, {0, 1, 1, 1, 1}), C);
  CHECK(g.values() == std::vector<Rational>{0, 0, 1, 1, 1});
  CHECK(minimize(g, C) == g);
  CHECK_THROWS_AS(minimize(fn(m3, m3.values()), C), NotInPL);

  const DiversityFn n5 = n5_diversity(1, 2);
  const LatticeFunction p = minimize(fn(n5, {0, 2, 2, 2, 2}), constraint_system(n5));
  const Rational x = p(1);
  CHECK(p.values() == std::vector<Rational>{0, x, 2 - x, std::max(Rational(1), x), 2});
}

TEST_CASE("kappa") {
  const DiversityFn m3 = m3_diversity(Rational(2, 3));
  const Rational a(2, 3);
  CHECK(kappa(m3, 2).values() == std::vector<Rational>{0, a, 0, a, a});
  const DiversityFn n5 = n5_diversity(1, 2);
  CHECK(kappa(n5, 0).values() == n5.values());
  CHECK(kappa(n5, n5.lattice().index("a3")).values() == q({"1", "1", "2", "1", "2"}));
  CHECK_THROWS_AS(kappa(n5, 9), UnknownElement);
}

TEST_CASE("enumerate_tight_span worked examples") {
  SUBCASE("M3") {
    const TightSpanComplex T = enumerate_tight_span(m3_diversity(1));
    REQUIRE(T.vertices.size() == 4);
    CHECK(T.vertices[1].values() == q({"0", "1/2", "1/2", "1/2", "1"}));
    REQUIRE(T.faces.size() == 3);
    for (const Face& f : T.faces) {
      CHECK(f.dimension == 1);
      CHECK(f.maximal);
      CHECK(std::find(f.vertices.begin(), f.vertices.end(), 1) != f.vertices.end());
      CHECK(f.zero_coordinates == ElementSet{0});
    }
    CHECK(T.unbounded_faces_checked > 0);
  }
  SUBCASE("N5") {
    const TightSpanComplex T = enumerate_tight_span(n5_diversity(1, 2));
    REQUIRE(T.vertices.size() == 3);
    CHECK(T.vertices[0].values() == q({"0", "0", "2", "1", "2"}));
    CHECK(T.vertices[1].values() == q({"0", "1", "1", "1", "2"}));
    CHECK(T.vertices[2].values() == q({"0", "2", "0", "2", "2"}));
    REQUIRE(T.faces.size() == 2);
    CHECK(T.faces[0].vertices == std::vector<std::size_t>{0, 1});
    CHECK(T.faces[1].vertices == std::vector<std::size_t>{1, 2});
    CHECK(T.faces[0].tight_constraints == std::vector<std::size_t>{0, 2, 3});
  }
  SUBCASE("two-point metric") {
    const LatticePtr L = share(powerset_lattice(2));
    const TightSpanComplex T = enumerate_tight_span(make_valid_diversity(L, {0, 0, 0, 3}));
    REQUIRE(T.vertices.size() == 2);
    CHECK(T.vertices[0].values() == q({"0", "0", "3", "3"}));
    CHECK(T.vertices[1].values() == q({"0", "3", "0", "3"}));
    REQUIRE(T.faces.size() == 1);
    CHECK(T.faces[0].vertices == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("chain is a point") {
    const TightSpanComplex T = enumerate_tight_span(height_diversity(share(chain_lattice(3))));
    CHECK(T.vertices.size() == 1);
    CHECK(T.faces.empty());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(enumerate_tight_span(height_diversity(share(divisor_lattice(360)))), SizeLimit);
    DiversityFn unchecked(share(m3_lattice()), {0, 0, 0, 0, 1});
    CHECK_THROWS_AS(enumerate_tight_span(unchecked), NotValidated);
  }
}

TEST_CASE("enumerate_tight_span on random diversities") {
  Rng rng(23);
  for (const auto& entry : latdiv::testing::lattice_suite(7)) {
    for (int i = 0; i < 3; ++i) {
      const DiversityFn delta = latdiv::testing::random_diversity(rng, entry.lattice);
      TightSpanOptions one, many;
      many.threads = 3;
      const TightSpanComplex T = enumerate_tight_span(delta, one);
      const TightSpanComplex U = enumerate_tight_span(delta, many);
      CHECK(T.vertices == U.vertices);
      CHECK(T.faces.size() == U.faces.size());
      for (const auto& v : T.vertices) {
        CHECK(in_TL(v, T.system).member);
        if (entry.lattice->size() <= 6) CHECK(latdiv::testing::minimal_by_definition(v.values(), delta));
      }
      // kappa of an atom is a point of T_L, so lies in some face or is a vertex.
      for (Element a : entry.lattice->atoms()) {
        const LatticeFunction h = kappa(delta, a);
        const bool vertex = std::find(T.vertices.begin(), T.vertices.end(), h) != T.vertices.end();
        bool in_face = false;
        for (const Face& f : T.faces) {
          std::vector<RationalVector> pts;
          for (std::size_t v : f.vertices) pts.push_back(T.vertices[v].values());
          const std::size_t d = affine_dimension(pts);
          pts.push_back(h.values());
          in_face |= affine_dimension(pts) == d;
        }
        CHECK((vertex || in_face));
      }
    }
  }
}

TEST_CASE("check_characterization") {
  const DiversityFn m3 = m3_diversity(1);
  const ConstraintSystem C = constraint_system(m3);
  CHECK(check_characterization(fn(m3, {0, 0, 1, 1, 1}), C));
  CHECK_FALSE(check_characterization(fn(m3, {0, 0, 0, 0, 1}), C));
  Rng rng(4);
  for (const auto& entry : latdiv::testing::lattice_suite(8)) {
    const DiversityFn delta = latdiv::testing::random_diversity(rng, entry.lattice);
    const ConstraintSystem S = constraint_system(delta);
    for (Element a : entry.lattice->atoms()) CHECK(check_characterization(kappa(delta, a), S));
  }
}

TEST_CASE("check_TL_properties") {
  const DiversityFn m3 = m3_diversity(1);
  CHECK(check_TL_properties(fn(m3, {0, 0, 1, 1, 1}), m3).ok());
  CHECK(check_TL_properties(fn(m3, {0, 1, 0, 1, 1}), m3).ok());
  const DiversityFn n5 = n5_diversity(1, 2);
  CHECK(check_TL_properties(fn(n5, {0, 1, 1, 1, 2}), n5).ok());
  CHECK_THROWS_AS(check_TL_properties(fn(m3, {0, 1, 1, 1, 1}), m3), NotInTL);
}

TEST_CASE("kappa_homomorphism_counterexamples") {
  Rng rng(8);
  for (std::size_t k = 1; k <= 5; ++k) {
    const DiversityFn delta = latdiv::testing::random_diversity(rng, share(chain_lattice(k)));
    CHECK(kappa_homomorphism_counterexamples(delta).empty());
  }
  const LatticePtr p = share(powerset_lattice({"a", "b", "c"}));
  std::vector<Rational> values(p->size(), 0);
  for (const char* pair : {"{a,b}", "{a,c}", "{b,c}"}) values[p->index(pair)] = 1;
  values[p->top()] = Rational(3, 2);
  const auto found = kappa_homomorphism_counterexamples(make_valid_diversity(p, values));
  const Element a = p->index("{a}"), b = p->index("{b}"), c = p->index("{c}");
  const auto hit = std::find_if(found.begin(), found.end(),
                                [&](const KappaCounterexample& x) { return x.a == a && x.b == b && x.c == c; });
  REQUIRE(hit != found.end());
  CHECK(hit->joined == Rational(3, 2));
  CHECK(hit->larger == 1);
  CHECK(hit->gap == Rational(1, 2));
  for (const auto& x : found) {
    CHECK(x.a < x.b);
    CHECK(x.gap == x.joined - x.larger);
  }
}

TEST_CASE("oracle agreement on small lattices") {
  Rng rng(31);
  std::size_t tl_points = 0;
  for (const auto& entry : latdiv::testing::lattice_suite(6)) {
    for (int d = 0; d < 3; ++d) {
      const DiversityFn delta = latdiv::testing::random_diversity(rng, entry.lattice);
      const ConstraintSystem C = constraint_system(delta);
      for (int i = 0; i < 15; ++i) {
        const auto p = latdiv::testing::random_point(rng, entry.lattice->size(), 3);
        const LatticeFunction f = fn(delta, p);
        const bool pl = in_PL(f, C).member;
        CHECK(pl == latdiv::testing::in_PL_all_subsets(p, delta));
        if (entry.lattice->size() <= 5) {
          CHECK(in_TL(f, C).member == latdiv::testing::minimal_by_definition(p, delta));
        }
        CHECK(in_TL(f, C).member == check_characterization(f, C));
        if (!pl) continue;
        const LatticeFunction g = minimize(f, C);
        CHECK(g.below(f));
        CHECK(in_TL(g, C).member);
        CHECK(check_characterization(g, C));
        CHECK(minimize(g, C) == g);
        if (entry.lattice->size() <= 5) CHECK(latdiv::testing::minimal_by_definition(g.values(), delta));
        for (Element a = 0; a < g.values().size(); ++a) {
          CHECK(g(a) == latdiv::testing::coordinate_infimum(g.values(), delta, a));
        }
        ++tl_points;
      }
    }
  }
  CHECK(tl_points > 50);
}

TEST_CASE("kappa properties") {
  Rng rng(41);
  for (const auto& entry : latdiv::testing::lattice_suite(8)) {
    const LatticePtr& Lp = entry.lattice;
    const FiniteLattice& L = *Lp;
    std::vector<DiversityFn> family{trivial_diversity(Lp), latdiv::testing::random_diversity(rng, Lp)};
    if (is_modular(L)) family.push_back(height_diversity(Lp));
    for (const DiversityFn& delta : family) {
      const ConstraintSystem C = constraint_system(delta);
      std::vector<LatticeFunction> k;
      for (Element x = 0; x < L.size(); ++x) k.push_back(kappa(delta, x));
      for (Element x = 0; x < L.size(); ++x) {
        if (x != L.bottom()) CHECK(in_PL(k[x], C).member);
        if (L.is_atom(x)) CHECK(in_TL(k[x], C).member);
        for (Element y = 0; y < L.size(); ++y) {
          if (L.leq(x, y)) CHECK(k[x].below(k[y]));
        }
      }
      // Injective on atoms plus bottom, except that with a single atom a every
      // nonzero b is above a, so kappa(a) = kappa(0) = delta.
      const ElementSet& atoms = L.atoms();
      for (Element x : atoms) {
        for (Element y : atoms) CHECK((x == y || !(k[x] == k[y])));
        CHECK((k[x] == k[L.bottom()]) == (atoms.size() == 1));
      }
      if (delta.is_strictly_monotone()) {
        for (Element x = 1; x < L.size(); ++x) {
          for (Element y = x + 1; y < L.size(); ++y) CHECK_FALSE(k[x] == k[y]);
        }
      }
      const FiniteMetric d = induced_metric(delta);
      for (std::size_t i = 0; i < L.atoms().size(); ++i) {
        for (std::size_t j = 0; j < L.atoms().size(); ++j) CHECK(k[L.atoms()[i]](L.atoms()[j]) == d(i, j));
      }
    }
  }
}
