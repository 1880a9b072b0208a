#include "cantor/nat_set.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cantor {

NatSet::NatSet(std::vector<uint64_t> delta, NatTail tail)
    : delta_(std::move(delta)), tail_(std::move(tail)) {
  normalize();
}

void NatSet::normalize() {
  std::sort(delta_.begin(), delta_.end());
  // toggles cancel in pairs
  std::vector<uint64_t> kept;
  for (uint64_t n : delta_) {
    if (n == 0) throw std::invalid_argument("nat set members start at 1");
    if (!kept.empty() && kept.back() == n)
      kept.pop_back();
    else
      kept.push_back(n);
  }
  delta_ = std::move(kept);
}

NatSet NatSet::finite(std::vector<uint64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return NatSet(std::move(members), EmptyTail{});
}

NatSet NatSet::periodic(std::vector<uint8_t> prefix, std::vector<uint8_t> period) {
  if (period.empty()) throw std::invalid_argument("periodic tail needs a nonempty period");
  bool all_zero = true;
  for (uint8_t b : period) all_zero &= (b == 0);
  if (all_zero) {  // actually finite; store canonically
    std::vector<uint64_t> members;
    for (uint64_t i = 0; i < prefix.size(); ++i)
      if (prefix[i]) members.push_back(i + 1);
    return finite(std::move(members));
  }
  return NatSet({}, PeriodicTail{std::move(prefix), std::move(period)});
}

NatSet NatSet::dyadic_union(IndexSet index, int64_t offset) {
  return NatSet({}, DyadicTail{std::move(index), offset});
}

bool NatSet::base_contains(uint64_t n) const {
  if (std::holds_alternative<EmptyTail>(tail_)) return false;
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    uint64_t i = n - 1;
    if (i < p->prefix.size()) return p->prefix[i] != 0;
    return p->period[(i - p->prefix.size()) % p->period.size()] != 0;
  }
  const auto& d = std::get<DyadicTail>(tail_);
  int64_t m = static_cast<int64_t>(n) + d.offset;
  if (m < 1) return false;
  return d.index.contains(block_of(static_cast<uint64_t>(m)));
}

bool NatSet::contains(uint64_t n) const {
  if (n == 0) return false;
  bool base = base_contains(n);
  bool toggled = std::binary_search(delta_.begin(), delta_.end(), n);
  return base != toggled;
}

NatSet NatSet::shift_up() const {
  std::vector<uint64_t> delta;
  delta.reserve(delta_.size() + 1);
  for (uint64_t n : delta_) delta.push_back(n + 1);
  NatTail tail = tail_;
  if (auto* p = std::get_if<PeriodicTail>(&tail)) {
    p->prefix.insert(p->prefix.begin(), 0);
  } else if (auto* d = std::get_if<DyadicTail>(&tail)) {
    d->offset -= 1;
  }
  NatSet out(std::move(delta), std::move(tail));
  // nothing shifts onto position 1; drop it if the adjusted base claims it
  if (out.contains(1)) out = out.toggled(1);
  return out;
}

NatSet NatSet::shift_down() const {
  std::vector<uint64_t> delta;
  delta.reserve(delta_.size());
  for (uint64_t n : delta_)
    if (n >= 2) delta.push_back(n - 1);
  NatTail tail = tail_;
  if (auto* p = std::get_if<PeriodicTail>(&tail)) {
    if (!p->prefix.empty()) {
      p->prefix.erase(p->prefix.begin());
    } else {
      std::rotate(p->period.begin(), p->period.begin() + 1, p->period.end());
    }
  } else if (auto* d = std::get_if<DyadicTail>(&tail)) {
    d->offset += 1;
  }
  // a toggle at position 1 falls off the left edge, which is exactly right
  return NatSet(std::move(delta), std::move(tail));
}

NatSet NatSet::toggled(uint64_t n) const {
  std::vector<uint64_t> delta = delta_;
  delta.push_back(n);
  return NatSet(std::move(delta), tail_);
}

NatSet NatSet::unite(const NatSet& o) const {
  // same-kind tails (plus anything with a finite side) stay representable
  const NatSet* a = this;
  const NatSet* b = &o;
  if (a->tail_is_empty() || (a->tail_is_periodic() && b->tail_is_periodic()) ||
      (a->tail_is_dyadic() && b->tail_is_dyadic())) {
    // handled below
  } else if (b->tail_is_empty()) {
    std::swap(a, b);
  } else {
    throw std::invalid_argument("union of mixed nat-set tail kinds is not representable");
  }

  if (a->tail_is_empty()) {
    // finite a folded into b member-by-member
    NatSet out = *b;
    for (uint64_t n : a->delta_)
      if (!out.contains(n)) out = out.toggled(n);
    return out;
  }

  if (a->tail_is_periodic()) {
    const auto& pa = std::get<PeriodicTail>(a->tail_);
    const auto& pb = std::get<PeriodicTail>(b->tail_);
    uint64_t pre = std::max<uint64_t>(
        {pa.prefix.size(), pb.prefix.size(),
         a->delta_.empty() ? 0 : a->delta_.back(), b->delta_.empty() ? 0 : b->delta_.back()});
    uint64_t per = std::lcm(pa.period.size(), pb.period.size());
    if (per > (uint64_t(1) << 20)) throw std::invalid_argument("nat set period blow-up");
    std::vector<uint8_t> prefix(pre), period(per);
    for (uint64_t i = 0; i < pre; ++i)
      prefix[i] = (a->contains(i + 1) || b->contains(i + 1)) ? 1 : 0;
    for (uint64_t i = 0; i < per; ++i)
      period[i] = (a->contains(pre + i + 1) || b->contains(pre + i + 1)) ? 1 : 0;
    return periodic(std::move(prefix), std::move(period));
  }

  const auto& da = std::get<DyadicTail>(a->tail_);
  const auto& db = std::get<DyadicTail>(b->tail_);
  if (da.offset != db.offset) {
    if (da.index.is_finite() || db.index.is_finite()) {
      const NatSet* fin = da.index.is_finite() ? a : b;
      const NatSet* big = da.index.is_finite() ? b : a;
      NatSet out = *big;
      for (uint64_t n : fin->members())
        if (!out.contains(n)) out = out.toggled(n);
      return out;
    }
    throw std::invalid_argument("union of dyadic tails with different offsets");
  }
  NatSet out({}, DyadicTail{da.index.unite(db.index), da.offset});
  uint64_t fix = std::max(a->settled_after(), b->settled_after());
  std::vector<uint64_t> delta;
  for (uint64_t n = 1; n <= fix; ++n)
    if (out.base_contains(n) != (a->contains(n) || b->contains(n))) delta.push_back(n);
  return NatSet(std::move(delta), out.tail_);
}

std::vector<uint64_t> NatSet::members_up_to(uint64_t hi) const {
  std::vector<uint64_t> out;
  for (uint64_t n = 1; n <= hi; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

bool NatSet::is_finite() const {
  if (tail_is_empty()) return true;
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    for (uint8_t b : p->period)
      if (b) return false;
    return true;
  }
  return std::get<DyadicTail>(tail_).index.is_finite();
}

std::vector<uint64_t> NatSet::members(uint64_t cap) const {
  if (!is_finite()) throw std::invalid_argument("members() on an infinite nat set");
  // With no tail pattern the toggle list is already the member list, so even
  // sets with astronomically large members enumerate in O(count).
  if (std::holds_alternative<EmptyTail>(tail_)) return delta_;
  uint64_t hi = 0;
  if (!delta_.empty()) hi = delta_.back();
  if (const auto* p = std::get_if<PeriodicTail>(&tail_)) {
    hi = std::max<uint64_t>(hi, p->prefix.size());
  } else if (const auto* d = std::get_if<DyadicTail>(&tail_)) {
    const auto& bits = d->index;
    for (uint64_t k = bits.prefix_len(); k >= 1; --k)
      if (bits.contains(k)) {
        int64_t top = static_cast<int64_t>(block_hi(k)) - d->offset;
        if (top > 0) hi = std::max<uint64_t>(hi, static_cast<uint64_t>(top));
        break;
      }
  }
  if (hi > cap) throw std::invalid_argument("finite nat set too large to enumerate");
  return members_up_to(hi);
}

std::optional<uint64_t> NatSet::max_member() const {
  if (!is_finite()) return std::nullopt;
  auto all = members();
  if (all.empty()) return std::nullopt;
  return all.back();
}

uint64_t NatSet::settled_after() const {
  uint64_t s = delta_.empty() ? 0 : delta_.back();
  if (const auto* p = std::get_if<PeriodicTail>(&tail_))
    s = std::max<uint64_t>(s, p->prefix.size());
  // dyadic tails are settled everywhere once deltas stop
  return s;
}

NatSet dyadic_block(uint64_t k) {
  if (k == 0) throw std::invalid_argument("dyadic blocks are indexed from 1");
  return NatSet::dyadic_union(IndexSet::finite({k}), 0);
}

}  // namespace cantor
