#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cantor/index_set.hpp"

namespace cantor {

// Dyadic blocks: B_k = [2^(k-1), 2^k - 1], so B_1 = {1}, B_2 = {2,3}, ...
inline uint64_t block_lo(uint64_t k) { return uint64_t(1) << (k - 1); }
inline uint64_t block_hi(uint64_t k) { return (uint64_t(1) << k) - 1; }
inline uint64_t block_of(uint64_t n) {  // k with n in B_k, n >= 1
  uint64_t k = 0;
  while (n) {
    ++k;
    n >>= 1;
  }
  return k;
}

struct EmptyTail {};

// membership beyond the delta: explicit prefix bits, then a repeating block
struct PeriodicTail {
  std::vector<uint8_t> prefix;
  std::vector<uint8_t> period;  // nonempty
};

// base set {n >= 1 : n + offset >= 1 and block_of(n + offset) in index};
// offset lets shifts stay inside the representation class
struct DyadicTail {
  IndexSet index;
  int64_t offset = 0;
};

using NatTail = std::variant<EmptyTail, PeriodicTail, DyadicTail>;

// Subset of {1, 2, ...}: a structured base set modified by a finite symmetric
// difference. Closed under shift_up / shift_down and same-kind unions.
class NatSet {
 public:
  NatSet() : tail_(EmptyTail{}) {}

  static NatSet finite(std::vector<uint64_t> members);
  static NatSet periodic(std::vector<uint8_t> prefix, std::vector<uint8_t> period);
  static NatSet dyadic_union(IndexSet index, int64_t offset = 0);

  bool contains(uint64_t n) const;  // n >= 1
  NatSet shift_up() const;          // {n+1 : n in s}
  NatSet shift_down() const;        // {n : n+1 in s}
  // throws std::invalid_argument when tails are of incompatible kinds
  NatSet unite(const NatSet& o) const;
  NatSet toggled(uint64_t n) const;  // symmetric difference with {n}

  std::vector<uint64_t> members_up_to(uint64_t hi) const;
  bool is_finite() const;
  // all members, when finite and not absurdly large (cap guards block blow-up)
  std::vector<uint64_t> members(uint64_t cap = (uint64_t(1) << 22)) const;
  std::optional<uint64_t> max_member() const;  // nullopt when infinite or empty

  const NatTail& tail() const { return tail_; }
  const std::vector<uint64_t>& delta() const { return delta_; }
  bool tail_is_empty() const { return std::holds_alternative<EmptyTail>(tail_); }
  bool tail_is_periodic() const { return std::holds_alternative<PeriodicTail>(tail_); }
  bool tail_is_dyadic() const { return std::holds_alternative<DyadicTail>(tail_); }

  // position after which membership is purely the tail formula
  uint64_t settled_after() const;

 private:
  NatSet(std::vector<uint64_t> delta, NatTail tail);
  bool base_contains(uint64_t n) const;
  void normalize();

  std::vector<uint64_t> delta_;  // sorted unique toggles against the base set
  NatTail tail_;
};

// B_k as a NatSet (dyadic tail with a singleton index; no element listing)
NatSet dyadic_block(uint64_t k);

}  // namespace cantor
