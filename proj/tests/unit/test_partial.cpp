#include <gtest/gtest.h>

#include <vector>

#include "oracles.hpp"
#include "partspec/commlattice.hpp"
#include "partspec/errors.hpp"
#include "partspec/partial.hpp"

namespace partspec {
namespace {

RingTable m2f2() { return make_matrix_ring(make_zmod(2), 2); }

RingMap corner_map(const RingTable& t2, const RingTable& k) {
  RingMap f{t2, k, std::vector<Elem>(t2.size())};
  for (Elem x = 0; x < t2.size(); ++x) f.table[x] = matrix_entry(t2, x, 0, 0);
  return f;
}

TEST(Structure, CommutativeRingIsTotal) {
  RingTable r = make_zmod(12);
  PartialStructure s = standard_structure(r);
  for (Elem a = 0; a < r.size(); ++a) EXPECT_EQ(s.row(a).count(), r.size());
}

TEST(Structure, MatrixUnitsNotCommeasurable) {
  RingTable m = m2f2();
  PartialStructure s = standard_structure(m);
  const Elem e12 = matrix_unit(m, 0, 1, 1);
  const Elem e21 = matrix_unit(m, 1, 0, 1);
  EXPECT_FALSE(s.commeasurable(e12, e21));
  for (Elem a = 0; a < m.size(); ++a) {
    EXPECT_TRUE(s.commeasurable(a, m.zero()));
    EXPECT_TRUE(s.commeasurable(a, m.one()));
    EXPECT_TRUE(s.commeasurable(a, a));
  }
}

TEST(Axioms, StandardStructuresPass) {
  for (const RingTable& r : {m2f2(), make_triangular_ring(make_zmod(2), 2), make_zmod(12),
                             make_matrix_ring(make_zmod(3), 2)}) {
    AxiomReport rep = check_axioms(standard_structure(r));
    EXPECT_TRUE(rep.all_passed()) << r.label();
  }
}

std::vector<ElementSubset> standard_rows(const RingTable& r) {
  std::vector<ElementSubset> rows;
  PartialStructure s = standard_structure(r);
  for (Elem a = 0; a < r.size(); ++a) rows.push_back(s.row(a));
  return rows;
}

TEST(Axioms, BrokenSymmetryReportedWithWitness) {
  RingTable m = m2f2();
  auto rows = standard_rows(m);
  const Elem e11 = matrix_unit(m, 0, 0, 1);
  const Elem e22 = matrix_unit(m, 1, 1, 1);
  rows[e11].erase(e22);
  AxiomReport rep = check_axioms(PartialStructure::from_relation(m, rows));
  EXPECT_FALSE(rep.all_passed());
  const AxiomResult* sym = rep.find("symmetric");
  ASSERT_NE(sym, nullptr);
  EXPECT_FALSE(sym->passed);
  EXPECT_FALSE(sym->witness.empty());
}

TEST(Axioms, MissingOneRelationFailsAxiomOne) {
  RingTable m = m2f2();
  auto rows = standard_rows(m);
  const Elem a = matrix_unit(m, 0, 1, 1);
  rows[a].erase(m.one());
  rows[m.one()].erase(a);
  AxiomReport rep = check_axioms(PartialStructure::from_relation(m, rows));
  const AxiomResult* ax1 = rep.find("(1) zero and one");
  ASSERT_NE(ax1, nullptr);
  EXPECT_FALSE(ax1->passed);
  EXPECT_FALSE(ax1->witness.empty());
}

TEST(Axioms, RelationWithWrongShapeRejected) {
  RingTable m = m2f2();
  EXPECT_THROW(PartialStructure::from_relation(m, {}), PreconditionError);
}

TEST(PartialIdeal, NilpotentsOfM2F2) {
  RingTable m = m2f2();
  PartialStructure s = standard_structure(m);
  EXPECT_TRUE(is_partial_ideal(s, classify_elements(m).nilpotents));
  EXPECT_TRUE(is_partial_ideal(s, ElementSubset(m.size(), {m.zero()})));
}

TEST(PartialIdeal, NonUnitsOfF2xF2NotClosed) {
  RingTable p = make_product(make_zmod(2), make_zmod(2));
  const Elem e10 = product_element(p, std::vector<Elem>{1, 0});
  const Elem e01 = product_element(p, std::vector<Elem>{0, 1});
  Verdict v = is_partial_ideal(standard_structure(p), ElementSubset(p.size(), {p.zero(), e10, e01}));
  EXPECT_FALSE(v);
  std::vector<Elem> w = v.witness;
  std::sort(w.begin(), w.end());
  std::vector<Elem> expected{e10, e01};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(w, expected);
}

TEST(PartialIdeal, MissingZeroRejected) {
  RingTable m = m2f2();
  EXPECT_FALSE(is_partial_ideal(standard_structure(m), ElementSubset(m.size())));
}

TEST(PartialIdeal, ContainsOneIffEverything) {
  for (const RingTable& r : {m2f2(), make_triangular_ring(make_zmod(2), 2), make_zmod(12)}) {
    for (const auto& i : oracle::partial_ideals(r))
      EXPECT_EQ(i.contains(r.one()), i.count() == r.size()) << r.label();
  }
}

TEST(PartialIdeal, AgreesWithOracleOnAllSubsets) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  PartialStructure s = standard_structure(t2);
  oracle::for_each_subset(t2.size(), {}, [&](const std::vector<bool>& mask) {
    ElementSubset cand = oracle::to_subset(mask);
    EXPECT_EQ(static_cast<bool>(is_partial_ideal(s, cand)), oracle::is_partial_ideal(t2, mask));
  });
}

TEST(PartialIdeal, DivisionRingsHaveOnlyTrivialOnes) {
  for (const RingTable& f : {make_gf(2, 2), make_gf(2, 3), make_zmod(5), make_zmod(7)}) {
    auto ideals = oracle::partial_ideals(f);
    ASSERT_EQ(ideals.size(), 2u) << f.label();
    EXPECT_EQ(ideals[0].count(), 1u);
    EXPECT_EQ(ideals[1].count(), f.size());
  }
}

TEST(PartialIdeal, ClosureIsSmallestContaining) {
  RingTable m = m2f2();
  PartialStructure s = standard_structure(m);
  const Elem e12 = matrix_unit(m, 0, 1, 1);
  ElementSubset c = partial_ideal_closure(s, ElementSubset(m.size(), {e12}));
  EXPECT_TRUE(is_partial_ideal(s, c));
  EXPECT_TRUE(c.contains(e12));
  for (const auto& i : oracle::partial_ideals(m))
    if (i.contains(e12)) EXPECT_TRUE(c.is_subset_of(i));
}

TEST(PrimePartialIdeal, Examples) {
  RingTable f4 = make_gf(2, 2);
  EXPECT_TRUE(is_prime_partial_ideal(standard_structure(f4), ElementSubset(4, {0})));
  Verdict whole = is_prime_partial_ideal(standard_structure(f4), ElementSubset::full(4));
  EXPECT_FALSE(whole);
  EXPECT_EQ(whole.witness, (std::vector<Elem>{f4.one()}));
  RingTable z4 = make_zmod(4);
  EXPECT_TRUE(is_prime_partial_ideal(standard_structure(z4), ElementSubset(4, {0, 2})));
  RingTable z12 = make_zmod(12);
  EXPECT_FALSE(is_prime_partial_ideal(standard_structure(z12), ElementSubset(12, {0, 6})));
}

TEST(PrimePartialIdeal, RequiresPartialIdeal) {
  RingTable z4 = make_zmod(4);
  EXPECT_THROW(is_prime_partial_ideal(standard_structure(z4), ElementSubset(4, {0, 1})),
               PreconditionError);
}

TEST(PrimePartialIdeal, PairwiseAndPerSubringDefinitionsAgree) {
  for (const RingTable& r : {m2f2(), make_triangular_ring(make_zmod(2), 2),
                             make_product(make_zmod(2), make_zmod(4))}) {
    std::vector<std::vector<Elem>> subs;
    for (const auto& c : oracle::commutative_subrings(r)) subs.push_back(c.members());
    PartialStructure s = standard_structure(r);
    oracle::for_each_subset(r.size(), {r.zero()}, [&](const std::vector<bool>& mask) {
      const bool pairwise = oracle::is_prime_partial_ideal(r, mask);
      EXPECT_EQ(pairwise, oracle::prime_on_every_subring(r, subs, mask)) << r.label();
      ElementSubset cand = oracle::to_subset(mask);
      if (is_partial_ideal(s, cand)) EXPECT_EQ(static_cast<bool>(is_prime_partial_ideal(s, cand)), pairwise);
    });
  }
}

TEST(Morphism, RingHomsArePartialMorphisms) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  for (const auto& table : oracle::ring_homs(t2, make_zmod(2))) {
    RingMap f{t2, make_zmod(2), table};
    EXPECT_TRUE(is_partial_morphism(as_partial_morphism(f)));
  }
}

TEST(Morphism, CornerPassesDiagonalProductFails) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  RingTable f2 = make_zmod(2);
  EXPECT_TRUE(is_partial_morphism(as_partial_morphism(corner_map(t2, f2))));
  PartialMorphism prod{standard_structure(t2), f2, std::vector<Elem>(t2.size())};
  for (Elem x = 0; x < t2.size(); ++x)
    prod.table[x] = f2.mul(matrix_entry(t2, x, 0, 0), matrix_entry(t2, x, 1, 1));
  Verdict v = is_partial_morphism(prod);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.reason, "addition not preserved");
  ASSERT_EQ(v.witness.size(), 2u);
  EXPECT_TRUE(t2.commute(v.witness[0], v.witness[1]));
}

TEST(Morphism, NoncommutativeTargetRejected) {
  RingTable m = m2f2();
  PartialMorphism f{standard_structure(m), m, identity_map(m).table};
  EXPECT_THROW(is_partial_morphism(f), PreconditionError);
}

TEST(Morphism, AgreesWithOracle) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  RingTable f2 = make_zmod(2);
  auto good = oracle::partial_morphisms(t2, f2);
  EXPECT_EQ(good.size(), 4u);
  for (const auto& table : good)
    EXPECT_TRUE(is_partial_morphism(PartialMorphism{standard_structure(t2), f2, table}));
}

TEST(Preimage, CornerPullsBackZero) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  RingTable f2 = make_zmod(2);
  PartialMorphism f = as_partial_morphism(corner_map(t2, f2));
  ElementSubset pre = preimage(f, ElementSubset(2, {0}));
  EXPECT_EQ(pre.count(), 4u);
  pre.for_each([&](Elem x) { EXPECT_EQ(matrix_entry(t2, x, 0, 0), 0u); });
  EXPECT_TRUE(is_prime_partial_ideal(f.source, pre));
}

TEST(Preimage, IdentityIsIdentity) {
  RingTable z12 = make_zmod(12);
  PartialMorphism id = as_partial_morphism(identity_map(z12));
  for (const auto& i : oracle::ideals(z12)) EXPECT_EQ(preimage(id, i), i);
}

TEST(Preimage, ScalarInclusionIntoM2F2) {
  RingTable m = m2f2();
  RingTable f2 = make_zmod(2);
  RingMap incl{f2, m, {m.zero(), m.one()}};
  ASSERT_TRUE(is_ring_hom(incl));
  for (const auto& p : oracle::prime_partial_ideals(m))
    EXPECT_EQ(preimage(incl, p), ElementSubset(2, {0}));
}

TEST(Preimage, PreconditionsChecked) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  RingTable f2 = make_zmod(2);
  PartialMorphism f = as_partial_morphism(corner_map(t2, f2));
  EXPECT_THROW(preimage(f, ElementSubset(2, {1})), PreconditionError);
  RingMap bad{f2, f2, {0, 0}};
  EXPECT_THROW(preimage(bad, ElementSubset(2, {0})), PreconditionError);
}

FamilyAssignment nilradical_family(const CommLattice& lat) {
  FamilyAssignment a;
  for (std::size_t m : lat.maximal) {
    ElementSubset nil(lat.ring.size());
    lat.subrings[m].members.for_each([&](Elem x) {
      if (is_nilpotent(lat.ring, x)) nil.insert(x);
    });
    a[m] = nil;
  }
  return a;
}

TEST(Gluing, CommutativeRingSingleSubring) {
  RingTable z12 = make_zmod(12);
  CommLattice lat = enumerate_commutative_subrings(z12);
  for (const auto& j : oracle::ideals(z12)) {
    FamilyAssignment a{{lat.maximal[0], j}};
    EXPECT_EQ(glue_family(lat, a), j);
  }
}

TEST(Gluing, NilradicalsGlueToNilpotentSet) {
  RingTable m = m2f2();
  CommLattice lat = enumerate_commutative_subrings(m);
  EXPECT_EQ(glue_family(lat, nilradical_family(lat)), classify_elements(m).nilpotents);
}

TEST(Gluing, IncompatibleFamilyNamesPairAndElement) {
  // Maximal subrings of M2(F2) x F2 overlap in F2 x F2, so their ideals can
  // disagree on the overlap.
  RingTable m = m2f2();
  RingTable r = make_product(m, make_zmod(2));
  CommLattice lat = enumerate_commutative_subrings(r);
  ASSERT_EQ(lat.maximal.size(), 7u);
  FamilyAssignment a;
  for (std::size_t idx : lat.maximal) {
    ElementSubset left(r.size());
    lat.subrings[idx].members.for_each([&](Elem x) {
      if (product_components(r, x)[1] == 0) left.insert(x);
    });
    a[idx] = left;
  }
  const std::size_t odd = lat.maximal.back();
  a[odd] = ElementSubset(r.size(), {r.zero(), product_element(r, std::vector<Elem>{m.zero(), 1})});
  EXPECT_FALSE(check_family(lat, FamilyForm::kMaximal, a));
  try {
    glue_family(lat, a);
    FAIL() << "expected a CompatibilityError";
  } catch (const CompatibilityError& e) {
    EXPECT_NE(e.first(), e.second());
    EXPECT_TRUE(e.first() == odd || e.second() == odd);
    const auto& c1 = lat.subrings[e.first()].members;
    const auto& c2 = lat.subrings[e.second()].members;
    EXPECT_TRUE(c1.contains(e.element()) && c2.contains(e.element()));
  }
}

TEST(Gluing, KeysMustBeMaximals) {
  RingTable m = m2f2();
  CommLattice lat = enumerate_commutative_subrings(m);
  FamilyAssignment a{{0, ElementSubset(m.size(), {m.zero()})}};
  EXPECT_THROW(glue_family(lat, a), PreconditionError);
}

TEST(Restrict, Examples) {
  RingTable m = m2f2();
  CommLattice lat = enumerate_commutative_subrings(m);
  FamilyAssignment zero = restrict_family(ElementSubset(m.size(), {m.zero()}), lat);
  EXPECT_EQ(zero.size(), lat.size());
  for (const auto& [idx, ideal] : zero) EXPECT_EQ(ideal.count(), 1u);

  FamilyAssignment nil = restrict_family(classify_elements(m).nilpotents, lat);
  for (std::size_t idx : lat.maximal) {
    const auto& c = lat.subrings[idx].members;
    bool field = true;
    c.for_each([&](Elem x) {
      if (x != m.zero() && !two_sided_inverse(m, x)) field = false;
    });
    bool nil_subring = false;
    c.for_each([&](Elem x) {
      if (x != m.zero() && is_nilpotent(m, x)) nil_subring = true;
    });
    if (field) EXPECT_EQ(nil.at(idx).count(), 1u);
    if (nil_subring) EXPECT_EQ(nil.at(idx).count(), 2u);
  }
}

TEST(Restrict, FormsAgreeOnRestrictions) {
  RingTable m = m2f2();
  CommLattice lat = enumerate_commutative_subrings(m);
  for (const auto& i : oracle::partial_ideals(m)) {
    FamilyAssignment all = restrict_family(i, lat);
    EXPECT_TRUE(check_family(lat, FamilyForm::kNested, all));
    EXPECT_TRUE(check_family(lat, FamilyForm::kPairwise, all));
    FamilyAssignment maxs;
    for (std::size_t k : lat.maximal) maxs[k] = all.at(k);
    EXPECT_TRUE(check_family(lat, FamilyForm::kCofinal, maxs));
    EXPECT_TRUE(check_family(lat, FamilyForm::kMaximal, maxs));
    EXPECT_FALSE(check_family(lat, FamilyForm::kNested, maxs));
  }
}

TEST(Idempotents, Partitions) {
  EXPECT_TRUE(partition_idempotents(make_gf(2, 2)).chosen.empty());
  IdempotentPartition p = partition_idempotents(make_product(make_zmod(2), make_zmod(2)));
  EXPECT_EQ(p.chosen.size(), 1u);
  RingTable m = m2f2();
  IdempotentPartition q = partition_idempotents(m);
  EXPECT_EQ(q.chosen.size(), 3u);
  EXPECT_EQ(q.trivial, (std::vector<Elem>{m.zero(), m.one()}));
  ElementSubset seen(m.size());
  for (Elem e : q.trivial) EXPECT_TRUE(seen.insert(e));
  for (auto [e, f] : q.complement) {
    EXPECT_LT(e, f);
    EXPECT_EQ(m.add(e, f), m.one());
    EXPECT_TRUE(seen.insert(e));
    EXPECT_TRUE(seen.insert(f));
  }
  EXPECT_EQ(seen, classify_elements(m).idempotents);
  ASSERT_TRUE(q.nil_representatives.has_value());
  EXPECT_EQ(q.nil_representatives->size(), 3u);
  EXPECT_FALSE(partition_idempotents(make_zmod(12)).nil_representatives.has_value());
}

}  // namespace
}  // namespace partspec
