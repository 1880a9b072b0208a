#include "cantor/index_set.hpp"

#include <string>
#include <vector>

#include "cantor/rng.hpp"
#include <stdexcept>

#include "doctest.h"

using cantor::IndexSet;
using cantor::Rng;

namespace {

// independent reference: plain bit lookup, no normalization
struct RefBits {
  std::vector<int> prefix, period;
  bool has(uint64_t k) const {
    size_t i = k - 1;
    if (i < prefix.size()) return prefix[i] != 0;
    return period[(i - prefix.size()) % period.size()] != 0;
  }
};

RefBits random_ref(Rng& rng, uint64_t max_prefix, uint64_t max_period) {
  RefBits r;
  uint64_t np = rng.below(max_prefix + 1);
  uint64_t nq = 1 + rng.below(max_period);
  for (uint64_t i = 0; i < np; ++i) r.prefix.push_back(rng.coin() ? 1 : 0);
  for (uint64_t i = 0; i < nq; ++i) r.period.push_back(rng.coin() ? 1 : 0);
  return r;
}

IndexSet to_index_set(const RefBits& r) {
  std::vector<uint8_t> p(r.prefix.begin(), r.prefix.end());
  std::vector<uint8_t> q(r.period.begin(), r.period.end());
  return IndexSet(std::move(p), std::move(q));
}

}  // namespace

TEST_CASE("index set membership matches the raw bit pattern") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    RefBits ref = random_ref(rng, 8, 6);
    IndexSet s = to_index_set(ref);
    for (uint64_t k = 1; k <= 120; ++k) CHECK(s.contains(k) == ref.has(k));
  }
}

TEST_CASE("named index sets") {
  CHECK_FALSE(IndexSet::none().contains(1));
  CHECK_FALSE(IndexSet::none().contains(17));
  CHECK(IndexSet::all().contains(1));
  CHECK(IndexSet::all().contains(1000));
  for (uint64_t k = 1; k <= 50; ++k) {
    CHECK(IndexSet::odds().contains(k) == (k % 2 == 1));
    CHECK(IndexSet::evens().contains(k) == (k % 2 == 0));
  }
  IndexSet f = IndexSet::finite({2, 5, 9});
  for (uint64_t k = 1; k <= 40; ++k)
    CHECK(f.contains(k) == (k == 2 || k == 5 || k == 9));
  CHECK(f.is_finite());
  CHECK_FALSE(f.is_cofinite());
}

TEST_CASE("set algebra matches pointwise logic") {
  Rng rng(202);
  for (int trial = 0; trial < 120; ++trial) {
    RefBits ra = random_ref(rng, 6, 5);
    RefBits rb = random_ref(rng, 7, 4);
    IndexSet a = to_index_set(ra), b = to_index_set(rb);
    IndexSet u = a.unite(b), i = a.intersect(b), d = a.difference(b),
             c = a.complement();
    for (uint64_t k = 1; k <= 150; ++k) {
      bool xa = ra.has(k), xb = rb.has(k);
      CHECK(u.contains(k) == (xa || xb));
      CHECK(i.contains(k) == (xa && xb));
      CHECK(d.contains(k) == (xa && !xb));
      CHECK(c.contains(k) == !xa);
    }
  }
}

TEST_CASE("finite and cofinite classification") {
  CHECK(IndexSet::none().is_finite());
  CHECK(IndexSet::all().is_cofinite());
  CHECK_FALSE(IndexSet::odds().is_finite());
  CHECK_FALSE(IndexSet::odds().is_cofinite());
  IndexSet co = IndexSet::parse_bits("0101", "1");
  CHECK(co.is_cofinite());
  CHECK(co.cofinite_start() == 4);  // bits: 0,1,0,1 then all ones; last zero at 3
  CHECK(IndexSet::all().cofinite_start() == 1);
  IndexSet co2 = IndexSet::parse_bits("0111", "1");
  CHECK(co2.cofinite_start() == 2);
}

TEST_CASE("members and first_members agree with contains") {
  Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    RefBits ref = random_ref(rng, 6, 5);
    IndexSet s = to_index_set(ref);
    auto mem = s.members_up_to(80);
    size_t at = 0;
    for (uint64_t k = 1; k <= 80; ++k) {
      bool in = at < mem.size() && mem[at] == k;
      CHECK(in == ref.has(k));
      if (in) ++at;
    }
  }
  IndexSet odds = IndexSet::odds();
  CHECK(odds.first_members(5, 3) == std::vector<uint64_t>{3, 5, 7, 9, 11});
  CHECK(odds.first_members(2, 4) == std::vector<uint64_t>{5, 7});
  CHECK_THROWS_AS(IndexSet::finite({4}).first_members(2, 1), std::domain_error);
}

TEST_CASE("equality is extensional") {
  IndexSet a = IndexSet::parse_bits("", "10");
  IndexSet b = IndexSet::parse_bits("10", "10");
  IndexSet c = IndexSet::parse_bits("1", "01");
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a == IndexSet::odds());
  CHECK_FALSE(a == IndexSet::evens());
  // different period lengths, same set
  IndexSet d = IndexSet::parse_bits("", "1010");
  CHECK(a == d);
}

TEST_CASE("union and difference preserve finiteness the right way") {
  IndexSet f = IndexSet::finite({1, 4});
  IndexSet odds = IndexSet::odds();
  CHECK_FALSE(f.unite(odds).is_finite());
  CHECK(odds.difference(odds).is_finite());
  CHECK(odds.unite(odds.complement()).is_cofinite());
  CHECK(odds.unite(odds.complement()) == IndexSet::all());
}
