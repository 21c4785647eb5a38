#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "partspec/commlattice.hpp"
#include "partspec/finring.hpp"

namespace partspec {

/// Outcome of a checker: `ok`, or a failure with the offending elements.
struct Verdict {
  bool ok = true;
  std::vector<Elem> witness;
  std::string reason;

  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string reason, std::vector<Elem> witness = {}) {
    return {false, std::move(witness), std::move(reason)};
  }
};

/// A ring with a commeasurability relation. Operations are the ring's; the
/// relation says where they are "defined".
class PartialStructure {
 public:
  PartialStructure() = default;
  /// The standard structure: a and b are commeasurable iff ab = ba.
  static PartialStructure standard(const RingTable& ring);
  /// Arbitrary relation, one row per element. Not validated; see check_axioms.
  static PartialStructure from_relation(const RingTable& ring, std::vector<ElementSubset> rows);

  const RingTable& ring() const { return ring_; }
  bool commeasurable(Elem a, Elem b) const { return (*rows_)[a].contains(b); }
  const ElementSubset& row(Elem a) const { return (*rows_)[a]; }
  bool is_standard() const { return standard_; }

 private:
  RingTable ring_;
  std::shared_ptr<const std::vector<ElementSubset>> rows_;
  bool standard_ = false;
};

PartialStructure standard_structure(const RingTable& ring);

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::vector<Elem> witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;

  bool all_passed() const;
  const AxiomResult* find(const std::string& axiom) const;
};

/// Checks the partial-algebra axioms: (1) 0 and 1 commeasurable with all,
/// reflexivity and symmetry, (2) closure of the relation under the partial
/// operations, and (3.0)-(3.5) on commeasurable triples.
AxiomReport check_axioms(const PartialStructure& s);

Verdict is_partial_ideal(const PartialStructure& s, const ElementSubset& candidate);
/// Throws PreconditionError if `candidate` is not a partial ideal.
Verdict is_prime_partial_ideal(const PartialStructure& s, const ElementSubset& candidate);
/// Smallest partial ideal containing `gens`.
ElementSubset partial_ideal_closure(const PartialStructure& s, const ElementSubset& gens);

/// A function from a partial structure to a commutative ring.
struct PartialMorphism {
  PartialStructure source;
  RingTable target;
  std::vector<Elem> table;

  Elem operator()(Elem x) const { return table[x]; }
};

/// Throws PreconditionError when the target is noncommutative.
Verdict is_partial_morphism(const PartialMorphism& f);
/// Views a ring homomorphism with commutative codomain as a partial morphism.
PartialMorphism as_partial_morphism(const RingMap& f);

/// f^{-1}(ideal). Preconditions are verified.
ElementSubset preimage(const PartialMorphism& f, const ElementSubset& ideal);
/// Preimage along a full ring homomorphism of a partial ideal of its codomain.
ElementSubset preimage(const RingMap& f, const ElementSubset& ideal);

/// Subring index (into a CommLattice) -> ideal of that subring, in ambient
/// element indices.
using FamilyAssignment = std::map<std::size_t, ElementSubset>;

/// Glues an ideal per maximal commutative subring into a partial ideal.
/// Throws CompatibilityError naming the disagreeing pair and element.
ElementSubset glue_family(const CommLattice& lat, const FamilyAssignment& assignment);

/// C -> I ∩ C for every subring in the lattice. Throws ConsistencyError if
/// an intersection is not an ideal or nesting fails.
FamilyAssignment restrict_family(const ElementSubset& ideal, const CommLattice& lat);

/// The equivalent forms of data that determine a partial ideal.
enum class FamilyForm {
  kNested,    ///< every subring; I(C) = I(C') ∩ C whenever C ⊆ C'
  kPairwise,  ///< every subring; I(C1) ∩ C2 = C1 ∩ I(C2)
  kCofinal,   ///< keys form a cofinal set; pairwise condition among them
  kMaximal,   ///< keys are exactly the maximal subrings; pairwise condition
};

Verdict check_family(const CommLattice& lat, FamilyForm form, const FamilyAssignment& a);

struct IdempotentPartition {
  std::vector<Elem> trivial;              ///< {0, 1}
  std::vector<Elem> chosen;               ///< one of each complementary pair
  std::vector<std::pair<Elem, Elem>> complement;  ///< (e, 1 - e) for e in chosen
  /// One representative per scalar class of nonzero nilpotents; present when
  /// the prime subring is a field.
  std::optional<std::vector<Elem>> nil_representatives;
};

IdempotentPartition partition_idempotents(const RingTable& ring);

}  // namespace partspec
