#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "partspec/errors.hpp"
#include "partspec/finring.hpp"

namespace partspec {
namespace {

ElementSubset subset_of(const RingTable& r, std::vector<Elem> xs) {
  return ElementSubset(r.size(), xs);
}

TEST(ZMod, IdempotentsOfZ12) {
  RingTable z12 = make_zmod(12);
  EXPECT_EQ(classify_elements(z12).idempotents.members(), (std::vector<Elem>{0, 1, 4, 9}));
}

TEST(ZMod, UnitsAndCharacteristic) {
  RingTable z12 = make_zmod(12);
  EXPECT_EQ(classify_elements(z12).units.members(), (std::vector<Elem>{1, 5, 7, 11}));
  EXPECT_EQ(classify_elements(z12).nilpotents.members(), (std::vector<Elem>{0, 6}));
  EXPECT_EQ(z12.characteristic(), 12u);
  EXPECT_TRUE(z12.is_commutative());
}

TEST(ZMod, RejectsZeroModulusAndCap) {
  EXPECT_THROW(make_zmod(0), PreconditionError);
  EXPECT_THROW(make_zmod(5000), CapacityError);
  EXPECT_THROW(make_zmod(20, 16), CapacityError);
}

TEST(GaloisField, F4GeneratorHasOrderThree) {
  RingTable f4 = make_gf(2, 2);
  ASSERT_EQ(f4.size(), 4u);
  const Elem x = 2;
  EXPECT_EQ(f4.mul(x, x), f4.add(x, f4.one()));
  EXPECT_NE(f4.power(x, 1), f4.one());
  EXPECT_NE(f4.power(x, 2), f4.one());
  EXPECT_EQ(f4.power(x, 3), f4.one());
}

TEST(GaloisField, EveryNonzeroElementIsAUnit) {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 1}, {7, 1}}) {
    RingTable f = make_gf(p, k);
    EXPECT_EQ(classify_elements(f).units.count(), f.size() - 1) << f.label();
    EXPECT_EQ(f.characteristic(), static_cast<std::size_t>(p));
  }
}

TEST(GaloisField, RejectsBadParameters) {
  EXPECT_THROW(make_gf(4, 1), UnsupportedError);
  EXPECT_THROW(make_gf(2, 0), UnsupportedError);
  EXPECT_THROW(make_gf(2, 13), CapacityError);
}

TEST(GaloisField, CatalogModuliAreMonic) {
  for (const auto& [key, coeffs] : gf_catalog()) {
    EXPECT_EQ(coeffs.size(), key.second + 1u);
    EXPECT_EQ(coeffs.back(), 1u);
  }
}

TEST(MatrixRing, M2F2ElementClasses) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  ASSERT_EQ(m.size(), 16u);
  ElementClasses cls = classify_elements(m);
  EXPECT_EQ(cls.idempotents.count(), 8u);
  EXPECT_EQ(cls.nilpotents.count(), 4u);
  EXPECT_EQ(cls.units.count(), 6u);
  EXPECT_FALSE(m.is_commutative());
}

TEST(MatrixRing, MatrixUnitsMultiply) {
  RingTable m = make_matrix_ring(make_zmod(3), 2);
  const Elem e12 = matrix_unit(m, 0, 1, 1);
  const Elem e21 = matrix_unit(m, 1, 0, 1);
  EXPECT_EQ(m.mul(e12, e21), matrix_unit(m, 0, 0, 1));
  EXPECT_EQ(m.mul(e21, e12), matrix_unit(m, 1, 1, 1));
  EXPECT_EQ(m.mul(e12, e12), m.zero());
  EXPECT_EQ(matrix_entry(m, e12, 0, 1), 1u);
}

TEST(MatrixRing, EntriesRoundtrip) {
  RingTable m = make_matrix_ring(make_zmod(3), 2);
  for (Elem x = 0; x < m.size(); ++x) {
    auto e = matrix_entries(m, x);
    EXPECT_EQ(matrix_element(m, e), x);
  }
}

TEST(TriangularRing, SizesAndBelowDiagonal) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  RingTable t3 = make_triangular_ring(make_zmod(2), 3);
  EXPECT_EQ(t2.size(), 8u);
  EXPECT_EQ(t3.size(), 64u);
  for (Elem x = 0; x < t3.size(); ++x) EXPECT_EQ(matrix_entry(t3, x, 2, 0), 0u);
}

TEST(Product, Z2TimesZ3IsZ6) {
  RingTable p = make_product(make_zmod(2), make_zmod(3));
  RingTable z6 = make_zmod(6);
  auto homs = oracle::ring_homs(z6, p);
  ASSERT_EQ(homs.size(), 1u);
  std::vector<Elem> image = homs.front();
  std::sort(image.begin(), image.end());
  EXPECT_EQ(std::unique(image.begin(), image.end()), image.end());
}

TEST(Product, ComponentsRoundtrip) {
  RingTable p = make_power(make_zmod(3), 3);
  ASSERT_EQ(p.size(), 27u);
  for (Elem x = 0; x < p.size(); ++x) EXPECT_EQ(product_element(p, product_components(p, x)), x);
}

TEST(Tables, MalformedDistributivityReported) {
  // Z/2 addition with a multiplication that is not distributive.
  std::vector<Elem> add{0, 1, 1, 0};
  std::vector<Elem> mul{0, 1, 1, 1};
  try {
    RingTable::from_tables("bad", 2, add, mul, 0, 1);
    FAIL() << "expected an AxiomError";
  } catch (const AxiomError& e) {
    EXPECT_FALSE(e.axiom().empty());
    EXPECT_FALSE(e.witness().empty());
  }
}

TEST(Tables, NonAssociativeAdditionReported) {
  // 1 + (1 + 2) = 1 but (1 + 1) + 2 = 2.
  std::vector<Elem> add{0, 1, 2, 1, 0, 0, 2, 0, 1};
  std::vector<Elem> mul{0, 0, 0, 0, 1, 2, 0, 2, 1};
  EXPECT_THROW(RingTable::from_tables("bad", 3, add, mul, 0, 1), AxiomError);
}

TEST(Tables, FingerprintDependsOnTables) {
  EXPECT_EQ(make_zmod(4).fingerprint(), make_zmod(4).fingerprint());
  EXPECT_NE(make_zmod(4).fingerprint(), make_gf(2, 2).fingerprint());
}

TEST(Closure, NilpotentGeneratesDualNumbers) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  const Elem e12 = matrix_unit(m, 0, 1, 1);
  Subring s = closure(m, subset_of(m, {e12}));
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(s.commutative);
  EXPECT_TRUE(s.members.contains(m.one()));
}

TEST(Closure, NoncommutingPairGeneratesEverything) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  Subring s = closure(m, subset_of(m, {matrix_unit(m, 0, 1, 1), matrix_unit(m, 1, 0, 1)}));
  EXPECT_EQ(s.size(), 16u);
  EXPECT_FALSE(s.commutative);
}

TEST(Closure, EmptyGivesPrimeSubring) {
  RingTable m = make_matrix_ring(make_zmod(3), 2);
  Subring s = closure(m, ElementSubset(m.size()));
  EXPECT_EQ(s.size(), 3u);
}

TEST(Centralizer, DiagonalMatrixCentralizesDiagonal) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  const Elem e11 = matrix_unit(m, 0, 0, 1);
  Subring c = centralizer(m, subset_of(m, {e11}));
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c.members, oracle::centralizer_of(m, e11));
}

TEST(Subring, AsRingAndLiftRestrict) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  Subring s = closure(m, subset_of(m, {matrix_unit(m, 0, 1, 1)}));
  EmbeddedRing er = as_ring(m, s);
  EXPECT_EQ(er.ring.size(), 4u);
  EXPECT_TRUE(er.ring.is_commutative());
  EXPECT_EQ(er.lift(ElementSubset::full(4), m.size()), s.members);
  EXPECT_EQ(er.restrict(s.members).count(), 4u);
  EXPECT_TRUE(is_ring_hom(inclusion_map(er, m)));
}

TEST(Maps, CornerIsHomTraceIsNot) {
  RingTable t2 = make_triangular_ring(make_zmod(2), 2);
  RingTable f2 = make_zmod(2);
  RingMap corner{t2, f2, std::vector<Elem>(t2.size())};
  RingMap trace{t2, f2, std::vector<Elem>(t2.size())};
  RingMap diag_product{t2, f2, std::vector<Elem>(t2.size())};
  for (Elem x = 0; x < t2.size(); ++x) {
    const Elem a = matrix_entry(t2, x, 0, 0);
    const Elem d = matrix_entry(t2, x, 1, 1);
    corner.table[x] = a;
    trace.table[x] = f2.add(a, d);
    diag_product.table[x] = f2.mul(a, d);
  }
  EXPECT_TRUE(is_ring_hom(corner));
  EXPECT_FALSE(is_ring_hom(trace));
  EXPECT_FALSE(is_ring_hom(diag_product));
}

TEST(Maps, ComposeWithIdentity) {
  RingTable f4 = make_gf(2, 2);
  RingMap frob{f4, f4, std::vector<Elem>(4)};
  for (Elem x = 0; x < 4; ++x) frob.table[x] = f4.mul(x, x);
  ASSERT_TRUE(is_ring_hom(frob));
  EXPECT_EQ(compose(frob, identity_map(f4)).table, frob.table);
  EXPECT_EQ(compose(frob, frob).table, identity_map(f4).table);
}

TEST(Maps, MatrixMapOfHomIsHom) {
  RingTable f4 = make_gf(2, 2);
  RingMap frob{f4, f4, std::vector<Elem>(4)};
  for (Elem x = 0; x < 4; ++x) frob.table[x] = f4.mul(x, x);
  RingMap m = matrix_map(frob, 2);
  EXPECT_EQ(m.domain.size(), 256u);
  EXPECT_TRUE(is_ring_hom(m));
  RingMap bad{f4, f4, {0, 1, 1, 1}};
  EXPECT_THROW(matrix_map(bad, 2), PreconditionError);
}

TEST(Inverse, TwoSided) {
  RingTable m = make_matrix_ring(make_zmod(2), 2);
  for (Elem x = 0; x < m.size(); ++x) {
    auto inv = two_sided_inverse(m, x);
    if (!inv) continue;
    EXPECT_EQ(m.mul(x, *inv), m.one());
    EXPECT_EQ(m.mul(*inv, x), m.one());
  }
}

TEST(Oracle, ClosureAgreesWithSubsetFilter) {
  for (const RingTable& r : {make_matrix_ring(make_zmod(2), 2), make_triangular_ring(make_zmod(2), 2),
                             make_zmod(12), make_gf(2, 4)}) {
    for (const auto& s : oracle::commutative_subrings(r)) {
      EXPECT_TRUE(is_subring(r, s)) << r.label();
      EXPECT_EQ(closure(r, s).members, s) << r.label();
    }
  }
}

}  // namespace
}  // namespace partspec
