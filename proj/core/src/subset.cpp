#include "partspec/subset.hpp"

#include <algorithm>

namespace partspec {

ElementSubset::ElementSubset(std::size_t universe, std::initializer_list<Elem> members)
    : ElementSubset(universe) {
  for (Elem x : members) insert(x);
}

ElementSubset::ElementSubset(std::size_t universe, const std::vector<Elem>& members)
    : ElementSubset(universe) {
  for (Elem x : members) insert(x);
}

ElementSubset ElementSubset::full(std::size_t universe) {
  ElementSubset s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (universe % 64) s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return s;
}

ElementSubset ElementSubset::from_words(std::size_t universe, std::vector<std::uint64_t> words) {
  ElementSubset s;
  s.universe_ = universe;
  s.words_ = std::move(words);
  return s;
}

std::size_t ElementSubset::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool ElementSubset::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::vector<Elem> ElementSubset::members() const {
  std::vector<Elem> out;
  out.reserve(count());
  for_each([&](Elem x) { out.push_back(x); });
  return out;
}

bool ElementSubset::is_subset_of(const ElementSubset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool ElementSubset::intersects(const ElementSubset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

ElementSubset ElementSubset::operator&(const ElementSubset& other) const {
  ElementSubset r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
  return r;
}

ElementSubset ElementSubset::operator|(const ElementSubset& other) const {
  ElementSubset r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
  return r;
}

ElementSubset ElementSubset::operator-(const ElementSubset& other) const {
  ElementSubset r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~other.words_[i];
  return r;
}

bool ElementSubset::operator<(const ElementSubset& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t diff = words_[i] ^ other.words_[i];
    if (!diff) continue;
    const std::uint64_t low = diff & (~diff + 1);
    // The set owning the lowest differing element is smaller unless the other
    // set has nothing beyond it (then the other is a proper prefix).
    const bool mine = words_[i] & low;
    const ElementSubset& other_set = mine ? other : *this;
    const std::uint64_t above = ~((low << 1) - 1);
    bool other_continues = (other_set.words_[i] & above) != 0;
    for (std::size_t j = i + 1; !other_continues && j < words_.size(); ++j)
      other_continues = other_set.words_[j] != 0;
    return mine ? other_continues : !other_continues;
  }
  return false;
}

std::size_t ElementSubset::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

bool canonical_less(const ElementSubset& a, const ElementSubset& b) {
  const auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return a < b;
}

}  // namespace partspec
