#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "partspec/budget.hpp"
#include "partspec/commlattice.hpp"
#include "partspec/finring.hpp"
#include "partspec/partial.hpp"

namespace partspec {

/// Every ideal of a commutative ring, canonical order.
std::vector<ElementSubset> enumerate_ideals(const RingTable& c, const Budget& budget = {});

/// Prime ideals of a finite commutative ring.
struct SpecResult {
  RingTable ring;
  std::vector<ElementSubset> primes;
};

SpecResult spec(const RingTable& c, const Budget& budget = {});

/// For each prime of the codomain, the index of its preimage among the
/// domain's primes.
std::vector<std::size_t> spec_map(const RingMap& f, const SpecResult& domain,
                                  const SpecResult& codomain);

/// Primes of one maximal commutative subring, in ambient element indices.
struct LocalSpec {
  std::size_t subring = 0;
  std::vector<ElementSubset> primes;
};

/// A point of the limit: `choice[m]` indexes into `local[m].primes` for the
/// m-th maximal subring (order of CommLattice::maximal).
struct CompatibleFamily {
  std::vector<std::size_t> choice;
  auto operator<=>(const CompatibleFamily&) const = default;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t backtracks = 0;
  double seconds = 0.0;
  bool complete = false;
};

struct PartSpecResult {
  RingTable ring;
  std::vector<LocalSpec> local;
  std::vector<CompatibleFamily> families;
  /// ideals[i] is the partial ideal glued from families[i].
  std::vector<ElementSubset> ideals;
  SearchStats stats;

  /// Emptiness is only meaningful for a complete search.
  bool proves_empty() const { return stats.complete && families.empty(); }
};

/// Prime partial ideals as compatible families of primes over the maximal
/// commutative subrings. A budget-truncated run, including one stopped while
/// computing the local spectra, is returned with `stats.complete == false`.
PartSpecResult part_spec(const RingTable& ring, const CommLattice& lat, const Budget& budget = {});

/// For each prime partial ideal of the codomain, the index of its preimage
/// among the domain's. Throws ConsistencyError if a preimage is missing.
std::vector<std::size_t> part_spec_map(const RingMap& f, const PartSpecResult& domain,
                                       const PartSpecResult& codomain);

/// All unital ring homomorphisms a -> b, by generator assignment with
/// propagation. Canonical order (lexicographic tables).
std::vector<RingMap> enumerate_ring_homs(const RingTable& a, const RingTable& b,
                                         const Budget& budget = {});

/// All partial morphisms ring -> k: one homomorphism per maximal
/// commutative subring, agreeing on overlaps.
std::vector<PartialMorphism> enumerate_partial_morphisms(const RingTable& ring, const RingTable& k,
                                                         const CommLattice& lat,
                                                         const Budget& budget = {});

}  // namespace partspec
