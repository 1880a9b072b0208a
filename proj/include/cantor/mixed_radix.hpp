#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cantor/base_seq.hpp"
#include "cantor/nat_set.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// What is known about a digit-change set beyond the inspected window.
enum class TailKind { Empty, Periodic, Unknown };
const char* tail_kind_str(TailKind t);

struct JumpResult {
  std::vector<uint64_t> prefix;  // {n <= N : digit_n != digit_{n+1}}
  TailKind tail = TailKind::Unknown;
  // the complete structured change set, when it is materializable:
  // always for Empty within budget, for Periodic when the digit cycle was
  // found within budget, never for Unknown
  std::optional<NatSet> full;
};

// An exact nonnegative rational r together with its canonical expansion
//
//   r = [r] + sum_{n>=1} r_n / (a_1 ... a_n),   0 <= r_n < a_n,
//
// extracted greedily (multiply the remainder by a_n, take the floor). The
// greedy stream of a rational can never end in an all-(a_n - 1) tail, so the
// expansion is canonical. Digits are cached; copies share one extend-only
// cache and concurrent reads are safe.
class MixedRadixReal {
 public:
  MixedRadixReal(BaseSeq base, Rational value);

  const BaseSeq& base() const;
  const Rational& value() const;
  Integer integer_part() const;

  // n >= 1
  Integer digit(uint64_t n) const;
  // the first n digits
  std::vector<Integer> digits(uint64_t n) const;
  // [r]_n = [r] + sum_{k<=n} r_k / (a_1...a_k); n = 0 gives the integer part
  Rational truncate(uint64_t n) const;

  // does the digit stream become identically zero?
  bool expansion_terminates() const;
  // position of the last nonzero digit (0 when the fraction is 0);
  // only for terminating expansions
  uint64_t last_nonzero_digit() const;

  // digit-change set restricted to [1, N], plus tail classification
  JumpResult jump(uint64_t N) const;

 private:
  struct State;
  std::shared_ptr<State> st_;
};

// sign-and-magnitude wrapper extending the expansion machinery to all of Q;
// negative values are never expanded digit-wise themselves
class SignedReal {
 public:
  SignedReal(BaseSeq base, Rational value);

  int sign() const { return sign_; }
  const Rational& signed_value() const { return value_; }
  const MixedRadixReal& magnitude() const { return mag_; }

 private:
  int sign_;
  Rational value_;
  MixedRadixReal mag_;
};

// |r - s|; both sides must use the same base
MixedRadixReal absdiff(const SignedReal& r, const SignedReal& s);

// a number given by finitely many digits: value = int_part + sum digit/(a_1...a_pos)
struct DigitSpec {
  Integer int_part = 0;                // >= 0
  std::map<uint64_t, Integer> digits;  // position (>= 1) -> digit in [0, a_pos)
};

MixedRadixReal from_digit_spec(const DigitSpec& s, const BaseSeq& b);

// digits of r/p computed positionwise from the digits of r: wherever p
// divides a_n, digit_n(r/p) = [r_n / p] + (a_n / p) * (r_{n-1} mod p), with
// r_0 the integer part. Below the base's divisibility threshold for p the
// digits come from the exact quotient instead.
std::vector<Integer> div_by_prime_digits(const MixedRadixReal& r, uint64_t p,
                                         uint64_t N);

// superset of the digit-change sets of r + s and |r - s| on [1, N]:
// the change sets of r and s, those shifted down by one, the base's own
// change set, and it shifted down by one
std::vector<uint64_t> jump_algebra_bound(const MixedRadixReal& r,
                                         const MixedRadixReal& s, uint64_t N);

}  // namespace cantor
