#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cantor {

// Eventually periodic subset of {1, 2, 3, ...}: explicit prefix bits followed
// by an infinitely repeated period block. Index 1 is the first prefix bit (or
// the first period bit when the prefix is empty).
class IndexSet {
 public:
  IndexSet();  // empty set: no prefix, period {0}
  IndexSet(std::vector<uint8_t> prefix, std::vector<uint8_t> period);

  // bit strings of '0'/'1'; period_bits must be nonempty
  static IndexSet parse_bits(const std::string& prefix_bits, const std::string& period_bits);
  static IndexSet none();
  static IndexSet all();
  static IndexSet odds();
  static IndexSet evens();
  static IndexSet finite(std::vector<uint64_t> members);

  bool contains(uint64_t k) const;  // k >= 1
  bool is_finite() const;           // period all zero
  bool is_cofinite() const;         // period all one
  // smallest K with [K, inf) fully inside the set; requires is_cofinite()
  uint64_t cofinite_start() const;

  IndexSet unite(const IndexSet& o) const;
  IndexSet intersect(const IndexSet& o) const;
  IndexSet difference(const IndexSet& o) const;  // this minus o
  IndexSet complement() const;

  std::vector<uint64_t> members_up_to(uint64_t hi) const;
  // smallest `count` members >= min_k; throws std::domain_error if the set
  // runs out (finite set)
  std::vector<uint64_t> first_members(size_t count, uint64_t min_k) const;

  uint64_t prefix_len() const { return prefix_.size(); }
  uint64_t period_len() const { return period_.size(); }
  std::string prefix_bits() const;
  std::string period_bits() const;

  bool operator==(const IndexSet& o) const;  // extensional equality

 private:
  std::vector<uint8_t> prefix_;
  std::vector<uint8_t> period_;  // nonempty

  template <typename F>
  IndexSet zip(const IndexSet& o, F op) const;
};

}  // namespace cantor
