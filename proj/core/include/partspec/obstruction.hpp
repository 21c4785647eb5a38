#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partspec/budget.hpp"
#include "partspec/finring.hpp"
#include "partspec/ks.hpp"
#include "partspec/partial.hpp"

namespace partspec {

/// Square matrix over a finite field, row-major entries as field elements.
/// Matrix rings of these sizes are too large for Cayley tables, so the
/// Morita checks work with entries directly.
struct FieldMatrix {
  std::size_t n = 0;
  std::vector<Elem> entries;

  Elem at(std::size_t r, std::size_t c) const { return entries[r * n + c]; }
  bool operator==(const FieldMatrix&) const = default;
};

FieldMatrix matrix_identity(const RingTable& k, std::size_t n);
FieldMatrix matrix_product(const RingTable& k, const FieldMatrix& a, const FieldMatrix& b);
/// Gauss-Jordan inverse over the field k; std::nullopt if singular.
std::optional<FieldMatrix> matrix_inverse(const RingTable& k, const FieldMatrix& a);

/// The data of the Morita argument: k^n with a coordinate permutation rho,
/// the permutation matrix P, conjugation sigma by P and the diagonal
/// embedding iota of k^n into M_n(k).
struct MoritaScenario {
  RingTable k;
  std::size_t n = 0;
  /// pi[i] is the image of coordinate i.
  std::vector<std::size_t> pi;
  /// k^n as a flat product ring.
  RingTable kn;
  /// (rho a)_i = a_{pi(i)}.
  RingMap rho;
  /// P[i][pi(i)] = 1, so that P iota(a) P^-1 = iota(rho a).
  FieldMatrix p;
  FieldMatrix p_inverse;

  /// iota(a): the diagonal matrix with the coordinates of a.
  FieldMatrix iota(Elem a) const;
  /// sigma(x) = P x P^-1.
  FieldMatrix sigma(const FieldMatrix& x) const;
};

/// Default pi is the n-cycle i -> i+1 mod n. Throws PreconditionError if k is
/// not a field or pi is not a permutation.
MoritaScenario make_morita_scenario(const RingTable& k, std::size_t n,
                                    std::optional<std::vector<std::size_t>> pi = std::nullopt);

/// The same scenario with P replaced by another invertible matrix. Throws
/// PreconditionError if `p` is singular.
MoritaScenario with_conjugator(MoritaScenario s, FieldMatrix p);

/// iota(rho(a)) == sigma(iota(a)) for every a in k^n; the witness on failure
/// is the offending a.
Verdict verify_corner_commutation(const MoritaScenario& s);

/// The permutation of Spec(k^n) induced by rho; the witness always carries
/// it (entry j is the index of the preimage of prime j). Passes iff it has no
/// fixed points. Throws InapplicableError for n = 1.
Verdict verify_fixed_point_free(const MoritaScenario& s);

/// Cycle lengths of a permutation, ascending.
std::vector<std::size_t> cycle_lengths(const std::vector<Elem>& perm);

/// One machine-checked statement of the obstruction report.
struct ClaimEntry {
  std::string id;
  std::string statement;
  bool verified = false;
  /// False when a search behind the claim ran out of budget.
  bool complete = true;
  std::vector<std::pair<std::string, std::string>> facts;
  double seconds = 0.0;
};

/// Checks both Morita premises and records the deduction they support.
/// Throws InapplicableError for n = 1 and PreconditionError if a premise
/// fails.
ClaimEntry derive_contradiction(const MoritaScenario& s);

/// For every r: r - f(r)*1 is not invertible, and for triangular matrix
/// sources f(r) is a diagonal entry of r. Throws PreconditionError unless f
/// is a partial morphism into a field whose scalars embed in the source.
Verdict eigenvalue_check(const PartialMorphism& f);

/// Coloring problem on the primitive idempotents: a frame is a set of
/// pairwise orthogonal primitive idempotents summing to 1, and orthogonal
/// pairs are exclusive. A partial morphism to a field restricts to a valid
/// coloring of it.
struct IdempotentFrames {
  std::vector<Elem> primitives;
  ColoringInstance instance;
};

IdempotentFrames idempotent_frames(const RingTable& ring);

enum class ReportVerdict { kVerified, kFailed, kWithheld };

struct ObstructionReport {
  std::vector<ClaimEntry> entries;
  ReportVerdict verdict = ReportVerdict::kWithheld;
  std::string verdict_reason;
};

struct ReportTargets {
  std::vector<RingTable> rings;
  /// (claim name, system); each is expected to be uncolorable.
  std::vector<std::pair<std::string, RaySystem>> ray_systems;
  /// Lift dimensions applied to the first ray system.
  std::vector<std::size_t> lift_dimensions;
  std::vector<std::pair<RingTable, std::size_t>> morita;
  Budget budget;
  std::optional<std::filesystem::path> cache_dir;
  unsigned jobs = 1;

  /// M2(F2), M2(F3), T2(F2), Peres, its lift to 4, Morita over F2..F5 for
  /// n = 2, 3, 4.
  static ReportTargets defaults();
};

/// Recomputes every claim. The verdict is withheld when a search is
/// incomplete or no uncolorable ray system is among the verified claims,
/// and failed when a complete computation contradicts a claim.
ObstructionReport build_report(const ReportTargets& targets);

const char* to_string(ReportVerdict v);

}  // namespace partspec
