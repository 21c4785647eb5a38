#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "partspec/budget.hpp"
#include "partspec/finring.hpp"

namespace partspec {

/// The poset of unital commutative subrings of a finite ring.
///
/// `subrings` is in canonical order (size, then lexicographic bitset), so
/// index 0 is always the prime subring. `above[i]` holds every j with
/// subrings[i] contained in subrings[j] (reflexive).
struct CommLattice {
  RingTable ring;
  std::vector<Subring> subrings;
  std::vector<ElementSubset> above;
  std::vector<std::size_t> maximal;

  std::size_t size() const { return subrings.size(); }
  bool includes(std::size_t inner, std::size_t outer) const {
    return above[inner].contains(static_cast<Elem>(outer));
  }
  /// Index of a subring given by its members, if listed.
  std::optional<std::size_t> find(const ElementSubset& members) const;
};

struct LatticeOptions {
  Budget budget;
  /// Worker threads for frontier expansion. Output does not depend on it.
  unsigned jobs = 1;
};

/// Enumerates every unital commutative subring by closure-seeded BFS.
/// Throws BudgetExhausted rather than returning an incomplete lattice.
CommLattice enumerate_commutative_subrings(const RingTable& ring,
                                           const LatticeOptions& options = {});

/// Sorts, computes inclusion and maximal elements. Throws ConsistencyError if
/// a listed set is not a commutative unital subring.
CommLattice assemble_lattice(const RingTable& ring, std::vector<Subring> subrings);

std::vector<Subring> maximal_subrings(const CommLattice& lat);
bool is_cofinal(const CommLattice& lat, std::span<const std::size_t> subset);

/// Partition of subring indices into orbits under conjugation by units.
/// For reporting only.
std::vector<std::vector<std::size_t>> conjugacy_orbits(const CommLattice& lat);

// Disk cache: one file per ring fingerprint.
std::filesystem::path cache_file(const std::filesystem::path& dir, const RingTable& ring);
void cache_store(const std::filesystem::path& dir, const CommLattice& lat);
/// std::nullopt on a cache miss. Throws CacheError on a fingerprint mismatch
/// or a corrupt file.
std::optional<CommLattice> cache_load(const std::filesystem::path& dir, const RingTable& ring);

}  // namespace partspec
