#include "cantor/index_set.hpp"

#include <numeric>
#include <stdexcept>

namespace cantor {

namespace {
constexpr uint64_t kMaxPeriod = 1u << 20;

std::vector<uint8_t> parse_bit_string(const std::string& bits) {
  std::vector<uint8_t> out;
  out.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit string must be 0/1: " + bits);
    out.push_back(ch == '1' ? 1 : 0);
  }
  return out;
}

std::string bits_to_string(const std::vector<uint8_t>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (uint8_t b : bits) out.push_back(b ? '1' : '0');
  return out;
}
}  // namespace

IndexSet::IndexSet() : period_{0} {}

IndexSet::IndexSet(std::vector<uint8_t> prefix, std::vector<uint8_t> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("index set period must be nonempty");
  for (uint8_t b : prefix_)
    if (b > 1) throw std::invalid_argument("index set bits must be 0/1");
  for (uint8_t b : period_)
    if (b > 1) throw std::invalid_argument("index set bits must be 0/1");
}

IndexSet IndexSet::parse_bits(const std::string& prefix_bits, const std::string& period_bits) {
  return IndexSet(parse_bit_string(prefix_bits), parse_bit_string(period_bits));
}

IndexSet IndexSet::none() { return IndexSet({}, {0}); }
IndexSet IndexSet::all() { return IndexSet({}, {1}); }
IndexSet IndexSet::odds() { return IndexSet({}, {1, 0}); }
IndexSet IndexSet::evens() { return IndexSet({}, {0, 1}); }

IndexSet IndexSet::finite(std::vector<uint64_t> members) {
  uint64_t hi = 0;
  for (uint64_t m : members) {
    if (m == 0) throw std::invalid_argument("index set members start at 1");
    hi = std::max(hi, m);
  }
  std::vector<uint8_t> prefix(hi, 0);
  for (uint64_t m : members) prefix[m - 1] = 1;
  return IndexSet(std::move(prefix), {0});
}

bool IndexSet::contains(uint64_t k) const {
  if (k == 0) return false;
  uint64_t i = k - 1;
  if (i < prefix_.size()) return prefix_[i] != 0;
  return period_[(i - prefix_.size()) % period_.size()] != 0;
}

bool IndexSet::is_finite() const {
  for (uint8_t b : period_)
    if (b) return false;
  return true;
}

bool IndexSet::is_cofinite() const {
  for (uint8_t b : period_)
    if (!b) return false;
  return true;
}

uint64_t IndexSet::cofinite_start() const {
  if (!is_cofinite()) throw std::domain_error("index set is not cofinite");
  uint64_t start = 1;
  for (uint64_t i = 0; i < prefix_.size(); ++i)
    if (!prefix_[i]) start = i + 2;
  return start;
}

template <typename F>
IndexSet IndexSet::zip(const IndexSet& o, F op) const {
  uint64_t pre = std::max(prefix_.size(), o.prefix_.size());
  uint64_t per = std::lcm(period_.size(), o.period_.size());
  if (per > kMaxPeriod) throw std::invalid_argument("index set period blow-up");
  std::vector<uint8_t> prefix(pre), period(per);
  for (uint64_t i = 0; i < pre; ++i)
    prefix[i] = op(contains(i + 1), o.contains(i + 1)) ? 1 : 0;
  for (uint64_t i = 0; i < per; ++i)
    period[i] = op(contains(pre + i + 1), o.contains(pre + i + 1)) ? 1 : 0;
  return IndexSet(std::move(prefix), std::move(period));
}

IndexSet IndexSet::unite(const IndexSet& o) const {
  return zip(o, [](bool a, bool b) { return a || b; });
}

IndexSet IndexSet::intersect(const IndexSet& o) const {
  return zip(o, [](bool a, bool b) { return a && b; });
}

IndexSet IndexSet::difference(const IndexSet& o) const {
  return zip(o, [](bool a, bool b) { return a && !b; });
}

IndexSet IndexSet::complement() const {
  return zip(*this, [](bool a, bool) { return !a; });
}

std::vector<uint64_t> IndexSet::members_up_to(uint64_t hi) const {
  std::vector<uint64_t> out;
  for (uint64_t k = 1; k <= hi; ++k)
    if (contains(k)) out.push_back(k);
  return out;
}

std::vector<uint64_t> IndexSet::first_members(size_t count, uint64_t min_k) const {
  std::vector<uint64_t> out;
  uint64_t limit = prefix_.size() + period_.size();
  for (uint64_t k = std::max<uint64_t>(min_k, 1); out.size() < count; ++k) {
    if (contains(k)) out.push_back(k);
    if (k > limit && is_finite()) break;  // nothing past prefix+period on finite sets
  }
  if (out.size() < count) throw std::domain_error("index set has too few members");
  return out;
}

std::string IndexSet::prefix_bits() const { return bits_to_string(prefix_); }
std::string IndexSet::period_bits() const { return bits_to_string(period_); }

bool IndexSet::operator==(const IndexSet& o) const {
  uint64_t pre = std::max(prefix_.size(), o.prefix_.size());
  uint64_t per = std::lcm(period_.size(), o.period_.size());
  for (uint64_t k = 1; k <= pre + per; ++k)
    if (contains(k) != o.contains(k)) return false;
  return true;
}

}  // namespace cantor
