#pragma once

// Brute-force reference computations for small rings. They use nothing but
// the raw operation tables, so they share no search code with the library.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "partspec/finring.hpp"
#include "partspec/ks.hpp"

namespace partspec::oracle {

/// Largest ring on which subset enumeration is attempted.
inline constexpr std::size_t kSubsetLimit = 16;

/// Calls `visit` for every subset of {0..n-1} containing every element of
/// `forced`, as a membership vector.
void for_each_subset(std::size_t n, const std::vector<Elem>& forced,
                     const std::function<void(const std::vector<bool>&)>& visit);

ElementSubset to_subset(const std::vector<bool>& mask);

/// Every unital commutative subring, by filtering all subsets.
std::vector<ElementSubset> commutative_subrings(const RingTable& ring);
/// Members of `subs` not strictly contained in another member.
std::vector<ElementSubset> maximal_among(const std::vector<ElementSubset>& subs);

/// {y : xy = yx} computed from the table.
ElementSubset centralizer_of(const RingTable& ring, Elem x);
/// Maximal commutative subrings of a matrix ring over a field with n = 2:
/// the centralizers of the non-central elements.
std::vector<ElementSubset> centralizer_maximals(const RingTable& ring);

/// Ideals of a commutative ring by subset filtering.
std::vector<ElementSubset> ideals(const RingTable& ring);
/// Primes by the definition: proper and ab in P implies a or b in P.
std::vector<ElementSubset> primes(const RingTable& ring);

/// Pairwise definition on commuting pairs.
bool is_partial_ideal(const RingTable& ring, const std::vector<bool>& mask);
bool is_prime_partial_ideal(const RingTable& ring, const std::vector<bool>& mask);
/// Every partial ideal, by filtering subsets that contain zero.
std::vector<ElementSubset> partial_ideals(const RingTable& ring);
/// Every prime partial ideal, by filtering subsets.
std::vector<ElementSubset> prime_partial_ideals(const RingTable& ring);
/// The per-subring definition: P ∩ C is a prime ideal of C for every
/// commutative subring C, given as member lists.
bool prime_on_every_subring(const RingTable& ring, const std::vector<std::vector<Elem>>& subrings,
                            const std::vector<bool>& mask);

/// Unital ring homomorphisms by trying every map; only for |b|^|a| small.
std::vector<std::vector<Elem>> ring_homs(const RingTable& a, const RingTable& b);
/// Maps that are unital ring homomorphisms on every commuting pair.
std::vector<std::vector<Elem>> partial_morphisms(const RingTable& ring, const RingTable& k);

/// Number of valid colorings, by trying every 0/1 vector.
std::uint64_t count_colorings(const ColoringInstance& inst);

/// Maximal subrings containing an idempotent other than 0 and 1.
std::size_t split_count(const RingTable& ring, const std::vector<ElementSubset>& maximals);

/// Sorted squared coordinates of a ray whose entries are integers or integer
/// multiples of sqrt(2).
std::vector<std::int64_t> squared_pattern(const Ray& r);

}  // namespace partspec::oracle
