#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/nat_set.hpp"
#include "cantor/rational.hpp"
#include "cantor/submeasure.hpp"

namespace cantor {

// A positive-integer sequence (a_n)_{n>=1} with every term >= 2, in one of
// three finitely described shapes:
//
//   Constant(v)            a_n = v
//   EventuallyPeriodic     an explicit prefix followed by a repeating period
//   PrimorialBlocks(p...)  constant on each index block (2^{k-1}, 2^k],
//                          equal there to the product of the first
//                          min(k, m) listed primes (n = 1 counts as block 1)
//
// Alongside term access the class answers the structural questions the rest
// of the library needs: which primes divide almost every term, whether every
// prime seen anywhere divides almost every term (uniformity), where the
// sequence changes value, and which rationals have denominators built only
// from the almost-everywhere primes.
class BaseSeq {
 public:
  enum class Kind { Constant, EventuallyPeriodic, PrimorialBlocks };

  static BaseSeq constant(uint64_t value);
  static BaseSeq eventually_periodic(std::vector<uint64_t> prefix,
                                     std::vector<uint64_t> period);
  static BaseSeq primorial_blocks(std::vector<uint64_t> primes);

  Kind kind() const { return kind_; }

  // the n-th term, n >= 1
  Integer value_at(uint64_t n) const;
  // a_1 * ... * a_n (empty product 1 for n = 0); closed-form per kind
  Integer product_upto(uint64_t n) const;

  // primes dividing a_n for all but finitely many n, sorted ascending
  const std::vector<uint64_t>& primes() const { return pr_; }
  // true iff every prime dividing some term lies in primes()
  bool uniform() const { return uniform_; }
  // exact structured {n : a_n != a_{n+1}}
  const NatSet& jump_set() const { return jumps_; }

  // true iff every prime factor of q's denominator lies in primes()
  bool q_a_member(const Rational& q) const;

  // least N such that p | a_n for all n >= N; requires p in primes()
  uint64_t divisibility_threshold(uint64_t p) const;

  std::string describe() const;

  bool operator==(const BaseSeq& o) const;
  bool operator!=(const BaseSeq& o) const { return !(*this == o); }

  // kind-specific accessors; throw std::logic_error on kind mismatch
  uint64_t constant_value() const;
  const std::vector<uint64_t>& prefix() const;
  const std::vector<uint64_t>& period() const;
  const std::vector<uint64_t>& listed_primes() const;

 private:
  BaseSeq() = default;
  void finish();

  Kind kind_ = Kind::Constant;
  uint64_t value_ = 0;
  std::vector<uint64_t> prefix_, period_;
  std::vector<uint64_t> listed_;
  std::vector<Integer> blockprod_;  // prefix products of listed_

  std::vector<uint64_t> pr_;
  bool uniform_ = true;
  NatSet jumps_;
};

// Does the base's own jump set lie in the vanishing ideal of phi?
// In answers carry a tail-sum certificate, Out answers a density certificate.
MembershipResult is_adapted(const BaseSeq& b, const Submeasure& phi);

}  // namespace cantor
