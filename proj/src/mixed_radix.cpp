#include "cantor/mixed_radix.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>

namespace cantor {

namespace {

constexpr uint64_t kTerminationCap = uint64_t(1) << 21;
constexpr uint64_t kCycleCap = uint64_t(1) << 20;

}  // namespace

const char* tail_kind_str(TailKind t) {
  switch (t) {
    case TailKind::Empty: return "empty";
    case TailKind::Periodic: return "periodic";
    case TailKind::Unknown: return "unknown";
  }
  return "?";
}

struct MixedRadixReal::State {
  State(BaseSeq b, Rational v) : base(std::move(b)), value(std::move(v)) {}

  BaseSeq base;
  Rational value;
  Integer int_part;
  Integer q0;  // denominator of the fractional part
  Integer c0;  // initial remainder numerator: frac = c0 / q0

  mutable std::mutex mu;
  std::vector<Integer> digits;  // digits[i] is digit i+1
  Integer c;                    // remainder numerator after digits.size() steps

  std::optional<bool> terminates;
  std::optional<uint64_t> term_pos;  // first n with zero remainder
  bool tail_done = false;
  TailKind tail = TailKind::Unknown;
  std::optional<NatSet> tail_full;

  // --- all helpers below assume mu is held ---

  void ensure(uint64_t n) {
    while (digits.size() < n) {
      uint64_t idx = digits.size() + 1;
      Integer t = c * base.value_at(idx);
      Integer q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), q0.get_mpz_t());
      digits.push_back(std::move(q));
      c = std::move(r);
    }
  }

  bool decide_terminates() {
    if (terminates) return *terminates;
    Integer d = q0;
    switch (base.kind()) {
      case BaseSeq::Kind::Constant: {
        Integer v(static_cast<unsigned long>(base.constant_value()));
        while (d != 1) {
          Integer g = gcd(d, v);
          if (g == 1) break;
          d /= g;
        }
        break;
      }
      case BaseSeq::Kind::EventuallyPeriodic: {
        uint64_t n = 1;
        for (; n <= base.prefix().size() && d != 1; ++n)
          d /= gcd(d, base.value_at(n));
        while (d != 1) {
          Integer before = d;
          for (uint64_t i = 0; i < base.period().size(); ++i, ++n)
            d /= gcd(d, base.value_at(n));
          if (d == before) break;  // a whole period absorbed nothing
        }
        break;
      }
      case BaseSeq::Kind::PrimorialBlocks: {
        // every listed prime divides all sufficiently late terms, with
        // unbounded total multiplicity, so only listed primes matter
        for (uint64_t p : base.primes()) {
          Integer f(static_cast<unsigned long>(p));
          mpz_remove(d.get_mpz_t(), d.get_mpz_t(), f.get_mpz_t());
        }
        break;
      }
    }
    terminates = (d == 1);
    return *terminates;
  }

  // extraction up to the zero remainder; requires decide_terminates() true
  uint64_t termination_position() {
    if (term_pos) return *term_pos;
    while (c != 0) {
      if (digits.size() >= kTerminationCap)
        throw std::runtime_error("expansion terminates too deep to materialize");
      ensure(digits.size() + 1);
    }
    term_pos = digits.size();
    return *term_pos;
  }

  // settle point S and phase length L: for n >= S the next term a_{n+1}
  // depends only on (n - S) mod L
  bool settle_params(uint64_t& S, uint64_t& L) const {
    switch (base.kind()) {
      case BaseSeq::Kind::Constant:
        S = 0, L = 1;
        return true;
      case BaseSeq::Kind::EventuallyPeriodic:
        S = base.prefix().size(), L = base.period().size();
        return true;
      case BaseSeq::Kind::PrimorialBlocks: {
        uint64_t m = base.listed_primes().size();
        if (m - 1 >= 40 || (uint64_t(1) << (m - 1)) > kCycleCap) return false;
        S = uint64_t(1) << (m - 1), L = 1;
        return true;
      }
    }
    return false;
  }

  void classify_tail() {
    if (tail_done) return;
    tail_done = true;
    if (decide_terminates()) {
      tail = TailKind::Empty;
      uint64_t T;
      try {
        T = termination_position();
      } catch (const std::runtime_error&) {
        return;  // proven finite, but not materializable within budget
      }
      ensure(T + 1);
      std::vector<uint64_t> changes;
      for (uint64_t n = 1; n <= T; ++n)
        if (digits[n - 1] != (n < T ? digits[n] : Integer(0)))
          changes.push_back(n);
      tail_full = NatSet::finite(std::move(changes));
      return;
    }

    uint64_t S = 0, L = 1;
    if (!settle_params(S, L)) {
      tail = TailKind::Unknown;
      return;
    }
    // States X_j = (phase, remainder) at position S + j evolve by a pure
    // function once past S, so Brent cycle detection runs in O(1) memory.
    struct X {
      uint64_t phase;
      Integer c;
      bool operator==(const X& o) const { return phase == o.phase && c == o.c; }
    };
    auto stepx = [&](X x) {
      Integer t = x.c * base.value_at(S + x.phase + 1);
      mpz_fdiv_r(x.c.get_mpz_t(), t.get_mpz_t(), q0.get_mpz_t());
      x.phase = (x.phase + 1) % L;
      return x;
    };
    X x0{0, c0};
    for (uint64_t n = 0; n < S; ++n) {
      Integer t = x0.c * base.value_at(n + 1);
      mpz_fdiv_r(x0.c.get_mpz_t(), t.get_mpz_t(), q0.get_mpz_t());
    }
    uint64_t lam = 1, power = 1, steps = 0;
    X tort = x0, hare = stepx(x0);
    while (!(tort == hare)) {
      if (++steps > kCycleCap) {
        tail = TailKind::Unknown;
        return;
      }
      if (power == lam) {
        tort = hare;
        power *= 2;
        lam = 0;
      }
      hare = stepx(hare);
      ++lam;
    }
    hare = x0;
    for (uint64_t i = 0; i < lam; ++i) hare = stepx(hare);
    uint64_t mu = 0;
    tort = x0;
    while (!(tort == hare)) {
      if (++mu > kCycleCap) {
        tail = TailKind::Unknown;
        return;
      }
      tort = stepx(tort);
      hare = stepx(hare);
    }
    uint64_t pi = S + mu;
    ensure(pi + lam + 1);
    auto bit = [&](uint64_t n) {
      return static_cast<uint8_t>(digits[n - 1] != digits[n]);
    };
    std::vector<uint8_t> pre, per;
    for (uint64_t n = 1; n <= pi; ++n) pre.push_back(bit(n));
    for (uint64_t n = pi + 1; n <= pi + lam; ++n) per.push_back(bit(n));
    tail = TailKind::Periodic;
    tail_full = NatSet::periodic(std::move(pre), std::move(per));
  }
};

MixedRadixReal::MixedRadixReal(BaseSeq base, Rational value) {
  if (value < 0)
    throw std::invalid_argument("expansions are defined for nonnegative values");
  st_ = std::make_shared<State>(std::move(base), std::move(value));
  st_->int_part = floor_int(st_->value);
  Rational frac = st_->value - Rational(st_->int_part);
  st_->q0 = frac.get_den();
  st_->c0 = frac.get_num();
  st_->c = st_->c0;
}

const BaseSeq& MixedRadixReal::base() const { return st_->base; }
const Rational& MixedRadixReal::value() const { return st_->value; }
Integer MixedRadixReal::integer_part() const { return st_->int_part; }

Integer MixedRadixReal::digit(uint64_t n) const {
  if (n == 0) throw std::invalid_argument("digit positions start at 1");
  std::lock_guard<std::mutex> lk(st_->mu);
  st_->ensure(n);
  return st_->digits[n - 1];
}

std::vector<Integer> MixedRadixReal::digits(uint64_t n) const {
  std::lock_guard<std::mutex> lk(st_->mu);
  st_->ensure(n);
  return {st_->digits.begin(), st_->digits.begin() + static_cast<int64_t>(n)};
}

Rational MixedRadixReal::truncate(uint64_t n) const {
  std::lock_guard<std::mutex> lk(st_->mu);
  st_->ensure(n);
  Integer s(0);
  for (uint64_t k = 1; k <= n; ++k)
    s = s * st_->base.value_at(k) + st_->digits[k - 1];
  if (n == 0) return Rational(st_->int_part);
  return Rational(st_->int_part) + make_rational(s, st_->base.product_upto(n));
}

bool MixedRadixReal::expansion_terminates() const {
  std::lock_guard<std::mutex> lk(st_->mu);
  return st_->decide_terminates();
}

uint64_t MixedRadixReal::last_nonzero_digit() const {
  std::lock_guard<std::mutex> lk(st_->mu);
  if (!st_->decide_terminates())
    throw std::logic_error("expansion does not terminate");
  uint64_t T = st_->termination_position();
  for (uint64_t n = T; n >= 1; --n)
    if (st_->digits[n - 1] != 0) return n;
  return 0;
}

JumpResult MixedRadixReal::jump(uint64_t N) const {
  if (N == 0) throw std::invalid_argument("the inspection window starts at 1");
  std::lock_guard<std::mutex> lk(st_->mu);
  st_->ensure(N + 1);
  JumpResult out;
  for (uint64_t n = 1; n <= N; ++n)
    if (st_->digits[n - 1] != st_->digits[n]) out.prefix.push_back(n);
  st_->classify_tail();
  out.tail = st_->tail;
  out.full = st_->tail_full;
  return out;
}

SignedReal::SignedReal(BaseSeq base, Rational value)
    : sign_(sgn(value)), value_(value), mag_(std::move(base), abs(value)) {}

MixedRadixReal absdiff(const SignedReal& r, const SignedReal& s) {
  if (!(r.magnitude().base() == s.magnitude().base()))
    throw std::invalid_argument("operands use different bases");
  return {r.magnitude().base(), abs(r.signed_value() - s.signed_value())};
}

MixedRadixReal from_digit_spec(const DigitSpec& s, const BaseSeq& b) {
  if (s.int_part < 0)
    throw std::invalid_argument("integer part must be nonnegative");
  Rational total(s.int_part);
  for (const auto& [pos, dig] : s.digits) {
    if (pos == 0) throw std::invalid_argument("digit positions start at 1");
    if (dig < 0 || dig >= b.value_at(pos))
      throw std::invalid_argument("digit out of range for its position");
    if (dig == 0) continue;
    total += make_rational(dig, b.product_upto(pos));
  }
  return {b, total};
}

std::vector<Integer> div_by_prime_digits(const MixedRadixReal& r, uint64_t p,
                                         uint64_t N) {
  const BaseSeq& b = r.base();
  const auto& pr = b.primes();
  if (!std::binary_search(pr.begin(), pr.end(), p))
    throw std::domain_error("p must divide almost every term of the base");
  uint64_t n0 = b.divisibility_threshold(p);

  std::vector<Integer> out;
  out.reserve(N);
  {
    // through the threshold position the residue recurrence is not yet valid,
    // so the quotient's digits there are taken exactly
    MixedRadixReal exact(b, r.value() / Rational(static_cast<unsigned long>(p)));
    out = exact.digits(std::min<uint64_t>(N, n0));
  }
  if (out.size() >= N) return out;

  std::vector<Integer> rd = r.digits(N);
  Integer ip = r.integer_part();
  Integer pz(static_cast<unsigned long>(p));
  for (uint64_t n = n0 + 1; n <= N; ++n) {
    const Integer& rn = rd[n - 1];
    const Integer& rprev = n >= 2 ? rd[n - 2] : ip;
    Integer an = b.value_at(n);
    Integer q, res;
    mpz_fdiv_q(q.get_mpz_t(), rn.get_mpz_t(), pz.get_mpz_t());
    mpz_fdiv_r(res.get_mpz_t(), rprev.get_mpz_t(), pz.get_mpz_t());
    out.push_back(q + (an / pz) * res);
  }
  return out;
}

std::vector<uint64_t> jump_algebra_bound(const MixedRadixReal& r,
                                         const MixedRadixReal& s, uint64_t N) {
  if (!(r.base() == s.base()))
    throw std::invalid_argument("operands use different bases");
  std::set<uint64_t> acc;
  auto add = [&](const std::vector<uint64_t>& v) {
    for (uint64_t n : v) {
      if (n <= N) acc.insert(n);
      if (n >= 2 && n - 1 <= N) acc.insert(n - 1);
    }
  };
  add(r.jump(N + 1).prefix);
  add(s.jump(N + 1).prefix);
  add(r.base().jump_set().members_up_to(N + 1));
  return {acc.begin(), acc.end()};
}

}  // namespace cantor
