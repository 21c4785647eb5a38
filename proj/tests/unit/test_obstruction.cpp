#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "partspec/errors.hpp"
#include "partspec/obstruction.hpp"
#include "partspec/primespec.hpp"

namespace partspec {
namespace {

std::vector<RingTable> small_fields() {
  return {make_gf(2, 1), make_gf(3, 1), make_gf(2, 2), make_gf(5, 1)};
}

TEST(FieldMatrix, InverseOfPermutationMatrix) {
  RingTable f3 = make_gf(3, 1);
  MoritaScenario s = make_morita_scenario(f3, 3);
  EXPECT_EQ(matrix_product(f3, s.p, s.p_inverse), matrix_identity(f3, 3));
  EXPECT_EQ(matrix_product(f3, s.p_inverse, s.p), matrix_identity(f3, 3));
}

TEST(FieldMatrix, SingularHasNoInverse) {
  RingTable f2 = make_gf(2, 1);
  FieldMatrix ones{2, {1, 1, 1, 1}};
  EXPECT_FALSE(matrix_inverse(f2, ones).has_value());
  FieldMatrix upper{2, {1, 1, 0, 1}};
  auto inv = matrix_inverse(f2, upper);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(matrix_product(f2, upper, *inv), matrix_identity(f2, 2));
}

TEST(Morita, PremisesHoldAcrossFieldsAndSizes) {
  for (const RingTable& k : small_fields())
    for (std::size_t n = 2; n <= 4; ++n) {
      MoritaScenario s = make_morita_scenario(k, n);
      EXPECT_TRUE(verify_corner_commutation(s)) << k.label() << " n=" << n;
      Verdict fixed = verify_fixed_point_free(s);
      EXPECT_TRUE(fixed) << k.label() << " n=" << n;
      EXPECT_EQ(cycle_lengths(fixed.witness), (std::vector<std::size_t>{n}));
      ClaimEntry e = derive_contradiction(s);
      EXPECT_TRUE(e.verified);
      EXPECT_TRUE(e.complete);
      EXPECT_EQ(e.id, "morita.contradiction." + k.label() + ".n" + std::to_string(n));
    }
}

TEST(Morita, SigmaConjugatesDiagonalEmbedding) {
  RingTable f5 = make_gf(5, 1);
  MoritaScenario s = make_morita_scenario(f5, 3);
  for (Elem a = 0; a < s.kn.size(); ++a) EXPECT_EQ(s.iota(s.rho(a)), s.sigma(s.iota(a)));
  EXPECT_TRUE(is_ring_hom(s.rho));
}

TEST(Morita, IdentityPermutationHasFixedPoints) {
  RingTable f2 = make_gf(2, 1);
  MoritaScenario s = make_morita_scenario(f2, 3, std::vector<std::size_t>{0, 1, 2});
  EXPECT_TRUE(verify_corner_commutation(s));
  Verdict fixed = verify_fixed_point_free(s);
  EXPECT_FALSE(fixed);
  EXPECT_EQ(cycle_lengths(fixed.witness), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_THROW(derive_contradiction(s), PreconditionError);
}

TEST(Morita, PartialCyclesStillFixSomething) {
  RingTable f3 = make_gf(3, 1);
  MoritaScenario s = make_morita_scenario(f3, 3, std::vector<std::size_t>{1, 0, 2});
  Verdict fixed = verify_fixed_point_free(s);
  EXPECT_FALSE(fixed);
  EXPECT_EQ(cycle_lengths(fixed.witness), (std::vector<std::size_t>{1, 2}));
}

TEST(Morita, WrongConjugatorBreaksCommutation) {
  RingTable f3 = make_gf(3, 1);
  MoritaScenario s = with_conjugator(make_morita_scenario(f3, 2), matrix_identity(f3, 2));
  Verdict v = verify_corner_commutation(s);
  EXPECT_FALSE(v);
  ASSERT_EQ(v.witness.size(), 1u);
  EXPECT_NE(s.iota(s.rho(v.witness[0])), s.sigma(s.iota(v.witness[0])));
  EXPECT_THROW(with_conjugator(s, FieldMatrix{2, {1, 1, 1, 1}}), PreconditionError);
}

TEST(Morita, Preconditions) {
  EXPECT_THROW(make_morita_scenario(make_zmod(4), 2), PreconditionError);
  EXPECT_THROW(make_morita_scenario(make_gf(2, 1), 3, std::vector<std::size_t>{0, 0, 1}),
               PreconditionError);
  MoritaScenario one = make_morita_scenario(make_gf(2, 1), 1);
  EXPECT_THROW(verify_fixed_point_free(one), InapplicableError);
  EXPECT_THROW(derive_contradiction(one), InapplicableError);
}

TEST(Eigenvalue, TriangularMorphismsPass) {
  for (const RingTable& k : {make_gf(2, 1), make_gf(3, 1)}) {
    RingTable t = make_triangular_ring(k, 2);
    auto morphs = enumerate_partial_morphisms(t, k, enumerate_commutative_subrings(t));
    EXPECT_FALSE(morphs.empty());
    for (const auto& f : morphs) EXPECT_TRUE(eigenvalue_check(f)) << k.label();
  }
}

TEST(Eigenvalue, RejectsNonMorphisms) {
  RingTable k = make_gf(2, 1);
  RingTable t = make_triangular_ring(k, 2);
  PartialMorphism f{standard_structure(t), k, std::vector<Elem>(t.size(), 0)};
  EXPECT_THROW(eigenvalue_check(f), PreconditionError);
}

TEST(Frames, TriangularF2) {
  IdempotentFrames fr = idempotent_frames(make_triangular_ring(make_gf(2, 1), 2));
  EXPECT_EQ(fr.primitives.size(), 4u);
  EXPECT_EQ(fr.instance.bases.size(), 2u);
  EXPECT_EQ(oracle::count_colorings(fr.instance), 4u);
}

TEST(Frames, M2F2) {
  RingTable m = make_matrix_ring(make_gf(2, 1), 2);
  IdempotentFrames fr = idempotent_frames(m);
  EXPECT_EQ(fr.primitives.size(), 6u);
  EXPECT_EQ(fr.instance.bases.size(), 3u);
  EXPECT_EQ(oracle::count_colorings(fr.instance), 8u);
  EXPECT_EQ(solve_coloring(fr.instance).status, ColoringStatus::kSat);
}

TEST(Frames, MorphismsRestrictToColorings) {
  RingTable t = make_triangular_ring(make_gf(2, 1), 2);
  IdempotentFrames fr = idempotent_frames(t);
  for (const auto& f : enumerate_partial_morphisms(t, make_gf(2, 1), enumerate_commutative_subrings(t))) {
    std::vector<std::uint8_t> coloring;
    for (Elem e : fr.primitives) coloring.push_back(f(e) == 1 ? 1 : 0);
    EXPECT_TRUE(verify_coloring(fr.instance, coloring));
  }
}

TEST(Report, DefaultTargetsVerify) {
  ObstructionReport r = build_report(ReportTargets::defaults());
  EXPECT_EQ(r.verdict, ReportVerdict::kVerified) << r.verdict_reason;
  EXPECT_TRUE(std::is_sorted(r.entries.begin(), r.entries.end(),
                             [](const ClaimEntry& a, const ClaimEntry& b) { return a.id < b.id; }));
  auto has = [&](const std::string& id) {
    return std::any_of(r.entries.begin(), r.entries.end(), [&](const ClaimEntry& e) { return e.id == id; });
  };
  EXPECT_TRUE(has("ks.peres.unsat"));
  EXPECT_TRUE(has("ks.lift4.unsat"));
  EXPECT_TRUE(has("morita.contradiction.F2.n2"));
  EXPECT_TRUE(has("morita.corner.F5.n4"));
  for (const auto& e : r.entries) EXPECT_TRUE(e.verified && e.complete) << e.id;
}

TEST(Report, TinyBudgetWithholdsVerdict) {
  ReportTargets t = ReportTargets::defaults();
  t.budget = Budget{3, std::chrono::milliseconds(60'000)};
  t.rings.clear();
  ObstructionReport r = build_report(t);
  EXPECT_EQ(r.verdict, ReportVerdict::kWithheld);
}

TEST(Report, ColorableSystemFails) {
  ReportTargets t;
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < 3; ++i) {
    Ray r{std::vector<QuadInt>(3)};
    r.coords[i] = {1, 0};
    rays.push_back(r);
  }
  t.ray_systems = {{"axes", make_ray_system(3, rays)}};
  ObstructionReport r = build_report(t);
  EXPECT_EQ(r.verdict, ReportVerdict::kFailed);
  EXPECT_EQ(std::string(to_string(r.verdict)), std::string(to_string(ReportVerdict::kFailed)));
}

TEST(Report, NothingToWitnessIsWithheld) {
  ReportTargets t;
  t.morita = {{make_gf(2, 1), 2}};
  EXPECT_EQ(build_report(t).verdict, ReportVerdict::kWithheld);
  t.morita = {{make_gf(2, 1), 1}};
  EXPECT_THROW(build_report(t), PreconditionError);
}

}  // namespace
}  // namespace partspec
