#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace partspec {

/// Index of an element in a RingTable.
using Elem = std::uint32_t;

/// A set of element indices drawn from [0, universe). Stored as a dense
/// bitset; ordering is lexicographic on the ascending member sequence.
class ElementSubset {
 public:
  ElementSubset() = default;
  explicit ElementSubset(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  ElementSubset(std::size_t universe, std::initializer_list<Elem> members);
  ElementSubset(std::size_t universe, const std::vector<Elem>& members);

  static ElementSubset full(std::size_t universe);

  std::size_t universe() const { return universe_; }

  bool contains(Elem x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  /// Returns true if `x` was not already present.
  bool insert(Elem x) {
    auto& w = words_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    const bool fresh = !(w & bit);
    w |= bit;
    return fresh;
  }
  void erase(Elem x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  std::size_t count() const;
  bool empty() const;
  std::vector<Elem> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Elem>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const ElementSubset& other) const;
  bool intersects(const ElementSubset& other) const;
  ElementSubset operator&(const ElementSubset& other) const;
  ElementSubset operator|(const ElementSubset& other) const;
  ElementSubset operator-(const ElementSubset& other) const;

  bool operator==(const ElementSubset& other) const = default;
  /// Lexicographic comparison of ascending member lists.
  bool operator<(const ElementSubset& other) const;

  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }
  static ElementSubset from_words(std::size_t universe, std::vector<std::uint64_t> words);

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Canonical subring order: by size, then lexicographic.
bool canonical_less(const ElementSubset& a, const ElementSubset& b);

}  // namespace partspec

template <>
struct std::hash<partspec::ElementSubset> {
  std::size_t operator()(const partspec::ElementSubset& s) const noexcept { return s.hash(); }
};
