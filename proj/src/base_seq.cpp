#include "cantor/base_seq.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cantor/factor.hpp"

namespace cantor {

namespace {

// index block of position n: n = 1 counts as block 1, otherwise the k with
// n in (2^{k-1}, 2^k]
uint64_t seq_block(uint64_t n) {
  if (n <= 2) return 1;
  return static_cast<uint64_t>(std::bit_width(n - 1));
}

void require_term(uint64_t v) {
  if (v < 2) throw std::invalid_argument("base terms must be >= 2");
}

Integer pow_ui(const Integer& b, uint64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

BaseSeq BaseSeq::constant(uint64_t value) {
  require_term(value);
  BaseSeq b;
  b.kind_ = Kind::Constant;
  b.value_ = value;
  b.finish();
  return b;
}

BaseSeq BaseSeq::eventually_periodic(std::vector<uint64_t> prefix,
                                     std::vector<uint64_t> period) {
  if (period.empty())
    throw std::invalid_argument("eventually periodic base needs a nonempty period");
  for (uint64_t v : prefix) require_term(v);
  for (uint64_t v : period) require_term(v);
  BaseSeq b;
  b.kind_ = Kind::EventuallyPeriodic;
  b.prefix_ = std::move(prefix);
  b.period_ = std::move(period);
  b.finish();
  return b;
}

BaseSeq BaseSeq::primorial_blocks(std::vector<uint64_t> primes) {
  if (primes.empty())
    throw std::invalid_argument("primorial-blocks base needs at least one prime");
  if (primes.size() > 62)
    throw std::invalid_argument(
        "primorial-blocks base supports at most 62 primes (jump positions "
        "must stay below 2^63)");
  for (size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime_u64(primes[i]))
      throw std::invalid_argument("primorial-blocks entries must be prime");
    if (i > 0 && primes[i] <= primes[i - 1])
      throw std::invalid_argument(
          "primorial-blocks primes must be strictly increasing");
  }
  BaseSeq b;
  b.kind_ = Kind::PrimorialBlocks;
  b.listed_ = std::move(primes);
  b.blockprod_.assign(b.listed_.size() + 1, Integer(1));
  for (size_t i = 0; i < b.listed_.size(); ++i)
    b.blockprod_[i + 1] = b.blockprod_[i] * Integer(static_cast<unsigned long>(b.listed_[i]));
  b.finish();
  return b;
}

void BaseSeq::finish() {
  switch (kind_) {
    case Kind::Constant: {
      pr_ = distinct_prime_factors_u64(value_);
      uniform_ = true;
      jumps_ = NatSet::finite({});
      break;
    }
    case Kind::EventuallyPeriodic: {
      // almost-everywhere primes: those dividing every period term
      pr_ = distinct_prime_factors_u64(period_[0]);
      for (size_t i = 1; i < period_.size() && !pr_.empty(); ++i) {
        std::vector<uint64_t> keep;
        for (uint64_t p : pr_)
          if (period_[i] % p == 0) keep.push_back(p);
        pr_ = std::move(keep);
      }
      std::set<uint64_t> seen;
      for (uint64_t v : prefix_)
        for (uint64_t p : distinct_prime_factors_u64(v)) seen.insert(p);
      for (uint64_t v : period_)
        for (uint64_t p : distinct_prime_factors_u64(v)) seen.insert(p);
      uniform_ = std::all_of(seen.begin(), seen.end(), [&](uint64_t p) {
        return std::binary_search(pr_.begin(), pr_.end(), p);
      });
      // change set is eventually periodic with the period's length
      auto bit = [&](uint64_t n) {
        return static_cast<uint8_t>(value_at(n) != value_at(n + 1));
      };
      std::vector<uint8_t> pre, per;
      for (uint64_t n = 1; n <= prefix_.size(); ++n) pre.push_back(bit(n));
      for (uint64_t n = prefix_.size() + 1; n <= prefix_.size() + period_.size(); ++n)
        per.push_back(bit(n));
      jumps_ = NatSet::periodic(pre, per);
      break;
    }
    case Kind::PrimorialBlocks: {
      pr_ = listed_;
      uniform_ = true;
      std::vector<uint64_t> j;
      for (size_t k = 1; k < listed_.size(); ++k)
        j.push_back(uint64_t(1) << k);
      jumps_ = NatSet::finite(std::move(j));
      break;
    }
  }
}

Integer BaseSeq::value_at(uint64_t n) const {
  if (n == 0) throw std::invalid_argument("positions start at 1");
  switch (kind_) {
    case Kind::Constant:
      return Integer(static_cast<unsigned long>(value_));
    case Kind::EventuallyPeriodic: {
      if (n <= prefix_.size())
        return Integer(static_cast<unsigned long>(prefix_[n - 1]));
      uint64_t i = (n - prefix_.size() - 1) % period_.size();
      return Integer(static_cast<unsigned long>(period_[i]));
    }
    case Kind::PrimorialBlocks: {
      uint64_t k = std::min<uint64_t>(seq_block(n), listed_.size());
      return blockprod_[k];
    }
  }
  throw std::logic_error("unreachable");
}

Integer BaseSeq::product_upto(uint64_t n) const {
  switch (kind_) {
    case Kind::Constant:
      return pow_ui(Integer(static_cast<unsigned long>(value_)), n);
    case Kind::EventuallyPeriodic: {
      Integer out(1);
      uint64_t head = std::min<uint64_t>(n, prefix_.size());
      for (uint64_t i = 0; i < head; ++i)
        out *= Integer(static_cast<unsigned long>(prefix_[i]));
      if (n <= prefix_.size()) return out;
      uint64_t rest = n - prefix_.size();
      uint64_t L = period_.size();
      Integer per(1);
      for (uint64_t v : period_) per *= Integer(static_cast<unsigned long>(v));
      out *= pow_ui(per, rest / L);
      for (uint64_t i = 0; i < rest % L; ++i)
        out *= Integer(static_cast<unsigned long>(period_[i]));
      return out;
    }
    case Kind::PrimorialBlocks: {
      Integer out(1);
      uint64_t m = listed_.size();
      for (uint64_t k = 1; n > 0; ++k) {
        // positions with block index k: {1,2} for k = 1, (2^{k-1}, 2^k] after
        uint64_t bhi = uint64_t(1) << k;
        uint64_t blo = k == 1 ? 1 : (uint64_t(1) << (k - 1)) + 1;
        if (blo > n) break;
        uint64_t cnt = std::min(n, bhi) - blo + 1;
        if (k >= m) {
          // constant from here on
          cnt = n - blo + 1;
          out *= pow_ui(blockprod_[m], cnt);
          break;
        }
        out *= pow_ui(blockprod_[k], cnt);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

bool BaseSeq::q_a_member(const Rational& q) const {
  Integer den = q.get_den();
  for (uint64_t p : pr_) {
    Integer f(static_cast<unsigned long>(p));
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), f.get_mpz_t());
  }
  return den == 1;
}

uint64_t BaseSeq::divisibility_threshold(uint64_t p) const {
  if (!std::binary_search(pr_.begin(), pr_.end(), p))
    throw std::domain_error(
        "prime does not divide almost every term of this base");
  switch (kind_) {
    case Kind::Constant:
      return 1;
    case Kind::EventuallyPeriodic: {
      uint64_t n0 = 1;
      for (uint64_t i = 0; i < prefix_.size(); ++i)
        if (prefix_[i] % p != 0) n0 = i + 2;
      return n0;
    }
    case Kind::PrimorialBlocks: {
      uint64_t i = static_cast<uint64_t>(
          std::find(listed_.begin(), listed_.end(), p) - listed_.begin());
      return i == 0 ? 1 : (uint64_t(1) << i) + 1;
    }
  }
  throw std::logic_error("unreachable");
}

std::string BaseSeq::describe() const {
  std::ostringstream os;
  auto list = [&](const std::vector<uint64_t>& v) {
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << value_ << ')';
      break;
    case Kind::EventuallyPeriodic:
      os << "periodic(prefix=";
      list(prefix_);
      os << ", period=";
      list(period_);
      os << ')';
      break;
    case Kind::PrimorialBlocks:
      os << "primorial-blocks(";
      list(listed_);
      os << ')';
      break;
  }
  return os.str();
}

bool BaseSeq::operator==(const BaseSeq& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Constant:
      return value_ == o.value_;
    case Kind::EventuallyPeriodic:
      return prefix_ == o.prefix_ && period_ == o.period_;
    case Kind::PrimorialBlocks:
      return listed_ == o.listed_;
  }
  return false;
}

uint64_t BaseSeq::constant_value() const {
  if (kind_ != Kind::Constant) throw std::logic_error("not a constant base");
  return value_;
}

const std::vector<uint64_t>& BaseSeq::prefix() const {
  if (kind_ != Kind::EventuallyPeriodic)
    throw std::logic_error("not an eventually periodic base");
  return prefix_;
}

const std::vector<uint64_t>& BaseSeq::period() const {
  if (kind_ != Kind::EventuallyPeriodic)
    throw std::logic_error("not an eventually periodic base");
  return period_;
}

const std::vector<uint64_t>& BaseSeq::listed_primes() const {
  if (kind_ != Kind::PrimorialBlocks)
    throw std::logic_error("not a primorial-blocks base");
  return listed_;
}

MembershipResult is_adapted(const BaseSeq& b, const Submeasure& phi) {
  return ideal_membership(phi, b.jump_set());
}

}  // namespace cantor
