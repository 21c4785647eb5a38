#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "partspec/errors.hpp"
#include "partspec/primespec.hpp"

namespace partspec {
namespace {

RingTable dual_numbers() {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  return as_ring(m, closure(m, ElementSubset(m.size(), {matrix_unit(m, 0, 1, 1)}))).ring;
}

std::vector<RingTable> commutative_suite() {
  return {make_zmod(2), make_zmod(4), make_zmod(12), make_gf(2, 2), make_gf(3, 2),
          make_product(make_zmod(2), make_zmod(2)), dual_numbers(), make_power(make_zmod(2), 3)};
}

std::vector<std::vector<Elem>> tables(const std::vector<RingMap>& maps) {
  std::vector<std::vector<Elem>> out;
  for (const auto& f : maps) out.push_back(f.table);
  return out;
}

TEST(Ideals, MatchSubsetFilter) {
  for (const RingTable& r : commutative_suite())
    EXPECT_EQ(enumerate_ideals(r), oracle::ideals(r)) << r.label();
}

TEST(Spec, MatchesSubsetFilter) {
  for (const RingTable& r : commutative_suite())
    EXPECT_EQ(spec(r).primes, oracle::primes(r)) << r.label();
}

TEST(Spec, Z12HasTwoPrimes) {
  SpecResult s = spec(make_zmod(12));
  ASSERT_EQ(s.primes.size(), 2u);
  EXPECT_EQ(s.primes[0].members(), (std::vector<Elem>{0, 3, 6, 9}));
  EXPECT_EQ(s.primes[1].members(), (std::vector<Elem>{0, 2, 4, 6, 8, 10}));
}

TEST(Spec, FieldHasZeroIdealOnly) {
  SpecResult s = spec(make_gf(2, 3));
  ASSERT_EQ(s.primes.size(), 1u);
  EXPECT_EQ(s.primes[0].count(), 1u);
}

TEST(SpecMap, ProjectionPullsBack) {
  RingTable p = make_product(make_zmod(2), make_zmod(2));
  RingTable f2 = make_zmod(2);
  RingMap proj{p, f2, std::vector<Elem>(p.size())};
  for (Elem x = 0; x < p.size(); ++x) proj.table[x] = product_components(p, x)[0];
  SpecResult sp = spec(p);
  SpecResult sf = spec(f2);
  auto m = spec_map(proj, sp, sf);
  ASSERT_EQ(m.size(), 1u);
  sp.primes[m[0]].for_each([&](Elem x) { EXPECT_EQ(product_components(p, x)[0], 0u); });
}

TEST(PartSpec, CommutativeRingsEqualSpec) {
  for (const RingTable& r : commutative_suite()) {
    CommLattice lat = enumerate_commutative_subrings(r);
    PartSpecResult ps = part_spec(r, lat);
    EXPECT_TRUE(ps.stats.complete);
    std::vector<ElementSubset> ideals = ps.ideals;
    std::sort(ideals.begin(), ideals.end(), canonical_less);
    EXPECT_EQ(ideals, spec(r).primes) << r.label();
  }
}

TEST(PartSpec, NoncommutativeMatchSubsetFilter) {
  for (const RingTable& r : {make_matrix_ring(make_zmod(2), 2), make_triangular_ring(make_zmod(2), 2)}) {
    CommLattice lat = enumerate_commutative_subrings(r);
    PartSpecResult ps = part_spec(r, lat);
    std::vector<ElementSubset> ideals = ps.ideals;
    std::sort(ideals.begin(), ideals.end(), canonical_less);
    EXPECT_EQ(ideals, oracle::prime_partial_ideals(r)) << r.label();
    for (const auto& p : ps.ideals) EXPECT_TRUE(is_prime_partial_ideal(standard_structure(r), p));
  }
}

TEST(PartSpec, CountsForSmallMatrixRings) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  EXPECT_EQ(part_spec(m, enumerate_commutative_subrings(m)).families.size(), 8u);
  RingTable t = make_triangular_ring(make_zmod(2), 2);
  EXPECT_EQ(part_spec(t, enumerate_commutative_subrings(t)).families.size(), 4u);
}

TEST(PartSpec, FamiliesAreCanonicallyOrdered) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  PartSpecResult ps = part_spec(m, enumerate_commutative_subrings(m));
  EXPECT_TRUE(std::is_sorted(ps.families.begin(), ps.families.end()));
  ASSERT_EQ(ps.local.size(), 7u);
}

TEST(PartSpec, TruncatedSearchIsNotEmptiness) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  CommLattice lat = enumerate_commutative_subrings(m);
  PartSpecResult ps = part_spec(m, lat, Budget{2, std::chrono::milliseconds(60'000)});
  EXPECT_FALSE(ps.stats.complete);
  EXPECT_FALSE(ps.proves_empty());
}

TEST(PartSpecMap, IdentityIsIdentity) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  PartSpecResult ps = part_spec(m, enumerate_commutative_subrings(m));
  auto idx = part_spec_map(identity_map(m), ps, ps);
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx[i], i);
}

TEST(Homs, MatchExhaustiveMaps) {
  const std::vector<std::pair<RingTable, RingTable>> pairs{
      {make_triangular_ring(make_zmod(2), 2), make_zmod(2)},
      {make_gf(2, 2), make_gf(2, 2)},
      {make_zmod(6), make_product(make_zmod(2), make_zmod(3))},
      {make_zmod(2), make_matrix_ring(make_zmod(2), 2)},
      {make_matrix_ring(make_zmod(2), 2), make_zmod(2)},
      {make_product(make_zmod(2), make_zmod(2)), make_matrix_ring(make_zmod(2), 2)},
      {dual_numbers(), make_matrix_ring(make_zmod(2), 2)},
      {make_zmod(4), make_zmod(2)},
      {make_zmod(2), make_zmod(4)},
  };
  for (const auto& [a, b] : pairs) {
    auto homs = enumerate_ring_homs(a, b);
    EXPECT_EQ(tables(homs), oracle::ring_homs(a, b)) << a.label() << " -> " << b.label();
    for (const auto& f : homs) EXPECT_TRUE(is_ring_hom(f));
  }
}

TEST(Homs, FrobeniusGeneratesAutomorphisms) {
  EXPECT_EQ(enumerate_ring_homs(make_gf(2, 4), make_gf(2, 4)).size(), 4u);
  EXPECT_EQ(enumerate_ring_homs(make_gf(3, 2), make_gf(3, 2)).size(), 2u);
  EXPECT_TRUE(enumerate_ring_homs(make_gf(2, 2), make_gf(2, 3)).empty());
}

TEST(PartialMorphisms, MatchExhaustiveMaps) {
  for (const RingTable& r : {make_matrix_ring(make_zmod(2), 2), make_triangular_ring(make_zmod(2), 2),
                             make_product(make_zmod(2), make_zmod(2))}) {
    RingTable f2 = make_zmod(2);
    auto found = enumerate_partial_morphisms(r, f2, enumerate_commutative_subrings(r));
    std::vector<std::vector<Elem>> got;
    for (const auto& f : found) got.push_back(f.table);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, oracle::partial_morphisms(r, f2)) << r.label();
  }
}

TEST(PartialMorphisms, M2F2HasNone) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  EXPECT_TRUE(enumerate_partial_morphisms(m, make_zmod(2), enumerate_commutative_subrings(m)).empty());
}

TEST(PartialMorphisms, TargetMustBeField) {
  RingTable t = make_triangular_ring(make_zmod(2), 2);
  EXPECT_THROW(enumerate_partial_morphisms(t, make_zmod(4), enumerate_commutative_subrings(t)),
               PreconditionError);
}

}  // namespace
}  // namespace partspec
