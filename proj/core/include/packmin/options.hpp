#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "packmin/errors.hpp"

namespace packmin {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct Options {
  std::uint64_t budget = kDefaultBudget;  // enumeration nodes per top-level call
  unsigned threads = 1;
};

// Shared node counter; exhausting it is always an error, never a truncation.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}
  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

  void charge(std::uint64_t nodes = 1) {
    if (used_.fetch_add(nodes, std::memory_order_relaxed) + nodes > limit_)
      throw Error(ErrorCode::BudgetExceeded, "lattices",
                  "enumeration node budget of " + std::to_string(limit_) + " exhausted");
  }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

}  // namespace packmin
