#pragma once

#include <chrono>
#include <cstdint>

namespace partspec {

/// Node and wall-clock limits for an exhaustive search.
struct Budget {
  std::uint64_t max_nodes = 10'000'000;
  std::chrono::milliseconds max_time{60'000};

  static Budget unlimited() {
    return {UINT64_MAX, std::chrono::milliseconds::max()};
  }
};

class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  /// Records `n` expanded nodes. Returns false once either limit is hit;
  /// stays false afterwards.
  bool charge(std::uint64_t n = 1) {
    if (exhausted_) return false;
    nodes_ += n;
    if (nodes_ > budget_.max_nodes) {
      exhausted_ = true;
    } else if ((nodes_ & 0x3ff) < n || n > 0x3ff) {
      if (std::chrono::steady_clock::now() - start_ > budget_.max_time) exhausted_ = true;
    }
    return !exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }
  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  Budget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace partspec
