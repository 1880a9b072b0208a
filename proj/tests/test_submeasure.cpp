#include "cantor/submeasure.hpp"

#include <algorithm>
#include <vector>

#include "cantor/index_set.hpp"
#include "cantor/nat_set.hpp"
#include "cantor/rng.hpp"
#include <stdexcept>

#include "doctest.h"

using namespace cantor;

namespace {

uint64_t ref_block(uint64_t n) {
  uint64_t k = 1, top = 1;
  while (n > top) {
    ++k;
    top = 2 * top + 1;
  }
  return k;
}

// independent weight oracle
Rational ref_weight(const Submeasure& phi, uint64_t n) {
  if (phi.kind() == Submeasure::Kind::ConstantWeight) return phi.constant();
  if (phi.carrier().contains(ref_block(n))) return pow2(-(int64_t)n);
  return make_rational(1, Integer((unsigned long)n));
}

// independent mass oracle: plain elementwise sum
Rational brute_mass(const Submeasure& phi, const NatSet& s, uint64_t lo, uint64_t hi) {
  Rational total(0);
  for (uint64_t n = std::max<uint64_t>(lo, 1); n <= hi; ++n)
    if (s.contains(n)) total += ref_weight(phi, n);
  return total;
}

NatSet random_small_set(Rng& rng) {
  uint64_t kind = rng.below(3);
  if (kind == 0) {
    std::vector<uint64_t> mem;
    for (uint64_t i = 0, c = rng.below(8); i < c; ++i)
      mem.push_back(rng.between(1, 90));
    return NatSet::finite(mem);
  }
  if (kind == 1) {
    std::vector<uint8_t> prefix, period;
    for (uint64_t i = 0, c = rng.below(6); i < c; ++i) prefix.push_back(rng.coin());
    for (uint64_t i = 0, c = 1 + rng.below(4); i < c; ++i) period.push_back(rng.coin());
    return NatSet::periodic(prefix, period);
  }
  std::vector<uint8_t> prefix, period;
  for (uint64_t i = 0, c = rng.below(4); i < c; ++i) prefix.push_back(rng.coin());
  for (uint64_t i = 0, c = 1 + rng.below(3); i < c; ++i) period.push_back(rng.coin());
  return NatSet::dyadic_union(IndexSet(prefix, period),
                              static_cast<int64_t>(rng.below(7)) - 3);
}

Submeasure random_phi(Rng& rng) {
  uint64_t kind = rng.below(4);
  if (kind == 0) return Submeasure::constant_weight(make_rational(1, Integer(1 + (unsigned long)rng.below(5))));
  if (kind == 1) return Submeasure::dyadic_weighted(IndexSet::odds());
  if (kind == 2) return Submeasure::dyadic_weighted(IndexSet::evens());
  std::vector<uint8_t> prefix, period;
  for (uint64_t i = 0, c = rng.below(5); i < c; ++i) prefix.push_back(rng.coin());
  for (uint64_t i = 0, c = 1 + rng.below(3); i < c; ++i) period.push_back(rng.coin());
  return Submeasure::dyadic_weighted(IndexSet(prefix, period));
}

}  // namespace

TEST_CASE("harmonic sums match naive accumulation") {
  Rng rng(111);
  for (int trial = 0; trial < 40; ++trial) {
    uint64_t first = rng.between(1, 50), step = rng.between(1, 9),
             count = rng.below(120);
    Rational naive(0);
    for (uint64_t t = 0; t < count; ++t)
      naive += make_rational(1, Integer((unsigned long)(first + t * step)));
    CHECK(harmonic_ap_sum(first, step, count) == naive);
  }
  // split consistency on a larger range
  CHECK(harmonic_range_sum(100, 4000) ==
        harmonic_range_sum(100, 1234) + harmonic_range_sum(1235, 4000));
  CHECK(harmonic_range_sum(5, 4) == 0);
  CHECK_THROWS_AS(harmonic_ap_sum(0, 1, 3), std::invalid_argument);
}

TEST_CASE("geometric sums match naive accumulation") {
  Rng rng(222);
  for (int trial = 0; trial < 40; ++trial) {
    uint64_t first = rng.between(1, 40), step = rng.between(1, 6),
             count = rng.below(60);
    Rational naive(0);
    for (uint64_t t = 0; t < count; ++t)
      naive += pow2(-(int64_t)(first + t * step));
    CHECK(geometric_ap_sum(first, step, count) == naive);
  }
  Rational naive(0);
  for (uint64_t n = 3; n <= 20; ++n) naive += pow2(-(int64_t)n);
  CHECK(geometric_range_sum(3, 20) == naive);
  CHECK(geometric_range_sum(1, 1) == make_rational(1, 2));
  CHECK(geometric_range_sum(9, 2) == 0);
}

TEST_CASE("weights follow the carrier pattern") {
  Submeasure phi = Submeasure::dyadic_weighted(IndexSet::odds());
  for (uint64_t n = 1; n <= 300; ++n) {
    CHECK(phi.weight_at(n) == ref_weight(phi, n));
    CHECK(phi.carried(n) == (ref_block(n) % 2 == 1));
  }
  Submeasure cw = Submeasure::constant_weight(make_rational(2, 7));
  CHECK(cw.weight_at(5) == make_rational(2, 7));
  CHECK_FALSE(cw.carried(5));
  CHECK_THROWS_AS(phi.weight_at(0), std::invalid_argument);
  CHECK_THROWS_AS(Submeasure::constant_weight(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(cw.carrier(), std::logic_error);
  CHECK_THROWS_AS(phi.constant(), std::logic_error);
}

TEST_CASE("mass over ranges matches the brute oracle") {
  Rng rng(333);
  for (int trial = 0; trial < 160; ++trial) {
    Submeasure phi = random_phi(rng);
    NatSet s = random_small_set(rng);
    uint64_t lo = rng.between(1, 120), hi = rng.between(1, 260);
    if (lo > hi) std::swap(lo, hi);
    CHECK(phi.mass_range(s, lo, hi) == brute_mass(phi, s, lo, hi));
  }
}

TEST_CASE("finite masses, including whole blocks") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  // carried block: pure geometric
  CHECK(odds.mass(dyadic_block(3)) == make_rational(15, 128));
  CHECK(odds.mass(dyadic_block(3)) == brute_mass(odds, dyadic_block(3), 1, 7));
  // uncarried block: pure harmonic
  CHECK(odds.mass(dyadic_block(4)) == harmonic_range_sum(8, 15));
  CHECK(odds.mass(dyadic_block(4)) == brute_mass(odds, dyadic_block(4), 1, 15));
  // a deep uncarried block sums half a million harmonic terms exactly
  Rational deep = odds.mass(dyadic_block(18));
  CHECK(deep > 0);
  CHECK(deep == harmonic_range_sum(uint64_t(1) << 17, (uint64_t(1) << 18) - 1));
  CHECK_THROWS_AS(odds.mass(NatSet::periodic({}, {1})), std::invalid_argument);
}

TEST_CASE("total mass classification") {
  Submeasure all = Submeasure::dyadic_weighted(IndexSet::all());
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  Submeasure cw = Submeasure::constant_weight(Rational(1));

  // odd positions under a full carrier: 1/2 + 1/8 + 1/32 + ... = 2/3
  MassValue mv = all.total_mass(NatSet::periodic({}, {1, 0}));
  CHECK(mv.kind == MassKind::Exact);
  CHECK(mv.value == make_rational(2, 3));
  // every position: sums to 1
  MassValue one = all.total_mass(NatSet::periodic({}, {1}));
  CHECK(one.kind == MassKind::Exact);
  CHECK(one.value == 1);
  // periodic pattern under a non-cofinite carrier diverges
  MassValue inf1 = odds.total_mass(NatSet::periodic({}, {1}));
  CHECK(inf1.kind == MassKind::Infinite);
  CHECK(inf1.value > 0);
  // block union matching the carrier: convergent two-sided bounds
  MassValue lb = odds.total_mass(NatSet::dyadic_union(IndexSet::odds(), 0), 256);
  CHECK(lb.kind == MassKind::LowerBound);
  REQUIRE(lb.upper.has_value());
  CHECK(lb.value <= *lb.upper);
  MassValue lb2 = odds.total_mass(NatSet::dyadic_union(IndexSet::odds(), 0), 4096);
  CHECK(lb.value <= lb2.value);
  CHECK(lb2.value <= *lb.upper);
  CHECK(*lb.upper - lb.value < make_rational(1, 1000000));
  // block union escaping the carrier infinitely often diverges
  MassValue inf2 = odds.total_mass(NatSet::dyadic_union(IndexSet::all(), 0));
  CHECK(inf2.kind == MassKind::Infinite);
  // constant weight: any infinite set diverges, any finite set is exact
  CHECK(cw.total_mass(NatSet::periodic({}, {1, 0})).kind == MassKind::Infinite);
  MassValue fin = cw.total_mass(NatSet::finite({4, 9, 10}));
  CHECK(fin.kind == MassKind::Exact);
  CHECK(fin.value == 3);
  // exact totals dominate every partial sum
  for (uint64_t n : {5, 20, 60})
    CHECK(all.partial_mass(NatSet::periodic({}, {1, 0}), n) < mv.value);
}

TEST_CASE("membership verdicts follow the structure") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  Submeasure cof = Submeasure::dyadic_weighted(IndexSet::parse_bits("0110", "1"));
  Submeasure cw = Submeasure::constant_weight(make_rational(1, 3));

  CHECK(ideal_membership(odds, NatSet::finite({1, 5, 900})).verdict == Verdict::In);
  CHECK(ideal_membership(odds, dyadic_block(13)).verdict == Verdict::In);
  CHECK(ideal_membership(cw, NatSet::finite({7})).verdict == Verdict::In);

  CHECK(ideal_membership(cof, NatSet::periodic({}, {1})).verdict == Verdict::In);
  CHECK(ideal_membership(cof, NatSet::periodic({1, 1}, {0, 0, 1})).verdict == Verdict::In);
  CHECK(ideal_membership(odds, NatSet::periodic({}, {1})).verdict == Verdict::Out);
  CHECK(ideal_membership(odds, NatSet::periodic({}, {0, 1})).verdict == Verdict::Out);
  CHECK(ideal_membership(cw, NatSet::periodic({}, {0, 1})).verdict == Verdict::Out);

  CHECK(ideal_membership(odds, NatSet::dyadic_union(IndexSet::odds(), 0)).verdict ==
        Verdict::In);
  CHECK(ideal_membership(odds, NatSet::dyadic_union(IndexSet::odds(), 2)).verdict ==
        Verdict::In);
  CHECK(ideal_membership(odds, NatSet::dyadic_union(IndexSet::odds().unite(IndexSet::finite({2, 6})), 0))
            .verdict == Verdict::In);
  CHECK(ideal_membership(odds, NatSet::dyadic_union(IndexSet::all(), 0)).verdict ==
        Verdict::Out);
  CHECK(ideal_membership(odds, NatSet::dyadic_union(IndexSet::evens(), -1)).verdict ==
        Verdict::Out);

  // never undecided on structured sets
  Rng rng(444);
  for (int trial = 0; trial < 80; ++trial) {
    MembershipResult r = ideal_membership(random_phi(rng), random_small_set(rng));
    CHECK(r.verdict != Verdict::Unknown);
    if (r.verdict == Verdict::In) {
      CHECK(r.in_cert.has_value());
      CHECK_FALSE(r.out_cert.has_value());
    } else {
      CHECK(r.out_cert.has_value());
      CHECK_FALSE(r.in_cert.has_value());
    }
  }
}

TEST_CASE("in-certificates bound the true tails and shrink to zero") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  Submeasure cof = Submeasure::dyadic_weighted(IndexSet::parse_bits("010", "1"));

  struct Case {
    Submeasure phi;
    NatSet s;
  };
  std::vector<Case> cases = {
      {odds, NatSet::finite({3, 4, 5, 6, 20, 21, 40})},
      {odds, dyadic_block(12)},
      {cof, NatSet::periodic({1, 0, 1}, {1, 0})},
      {odds, NatSet::dyadic_union(IndexSet::odds(), 2)},   // slivers below blocks
      {odds, NatSet::dyadic_union(IndexSet::odds(), -2)},  // slivers above blocks
      {odds, NatSet::dyadic_union(IndexSet::odds().unite(IndexSet::finite({4})), 0)},
      {Submeasure::constant_weight(make_rational(1, 5)), NatSet::finite({2, 9, 33})},
  };
  for (const auto& c : cases) {
    MembershipResult r = ideal_membership(c.phi, c.s);
    REQUIRE(r.verdict == Verdict::In);
    const InCertificate& cert = *r.in_cert;
    Rational prev = cert.bound_at(0);
    for (uint64_t n : {0, 1, 2, 3, 5, 9, 17, 40, 80, 200, 1000}) {
      Rational b = cert.bound_at(n);
      CHECK(b <= prev + 0);  // nonincreasing along the grid
      prev = b;
      // every bound dominates the exactly computed clipped tail
      CHECK(b >= c.phi.mass_range(c.s, n + 1, n + 5000));
    }
    for (const Rational& eps :
         {Rational(1), make_rational(1, 10), make_rational(1, 1000)}) {
      uint64_t t = cert.threshold_for(eps);
      CHECK(cert.bound_at(t) < eps);
      if (t > 0) CHECK(cert.bound_at(t - 1) >= eps);
    }
  }
}

TEST_CASE("out-certificates carry exact, checkable samples") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  Submeasure cw = Submeasure::constant_weight(make_rational(1, 2));

  struct Case {
    Submeasure phi;
    NatSet s;
  };
  std::vector<Case> cases = {
      {odds, NatSet::periodic({}, {1})},
      {odds, NatSet::periodic({1, 1, 0}, {0, 1, 1})},
      {odds, NatSet::dyadic_union(IndexSet::all(), 0)},
      {odds, NatSet::dyadic_union(IndexSet::evens(), 1)},
      {odds, NatSet::dyadic_union(IndexSet::evens(), -3)},
      {cw, NatSet::periodic({}, {0, 0, 1})},
  };
  for (const auto& c : cases) {
    MembershipResult r = ideal_membership(c.phi, c.s, 4);
    REQUIRE(r.verdict == Verdict::Out);
    const OutCertificate& oc = *r.out_cert;
    CHECK(oc.d > 0);
    CHECK(oc.samples.size() >= 4);
    CHECK_FALSE(oc.family.empty());
    uint64_t prev_hi = 0;
    for (const OutSample& smp : oc.samples) {
      CHECK(smp.lo > prev_hi);  // samples march outward
      prev_hi = smp.hi;
      CHECK(smp.mass_lower >= oc.d);
      if (smp.hi <= 70000) {
        uint64_t cnt = 0;
        for (uint64_t n = smp.lo; n <= smp.hi; ++n)
          if (c.s.contains(n)) ++cnt;
        CHECK(cnt == smp.count);
        CHECK(brute_mass(c.phi, c.s, smp.lo, smp.hi) >= smp.mass_lower);
      }
    }
  }
}

TEST_CASE("tall threshold: pinned values and minimality") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  CHECK(tall_threshold(odds, make_rational(1, 10)) == 11);
  CHECK(tall_threshold(odds, Rational(2)) == 1);
  CHECK(tall_threshold(odds, make_rational(1, 100)) == 101);
  Rng rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    Rational eps = make_rational(Integer(1 + (unsigned long)rng.below(12)),
                                 Integer(1 + (unsigned long)rng.below(400)));
    uint64_t t = tall_threshold(odds, eps);
    // valid: the worst-case weight at and past t stays below eps
    CHECK(make_rational(1, Integer((unsigned long)t)) < eps);
    // minimal among uniform thresholds
    if (t >= 2) CHECK(make_rational(1, Integer((unsigned long)(t - 1))) >= eps);
  }
  CHECK_THROWS_AS(tall_threshold(odds, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(
      tall_threshold(Submeasure::constant_weight(Rational(1)), Rational(1)),
      std::invalid_argument);
}

TEST_CASE("union modulus") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  CHECK(union_modulus(odds, make_rational(1, 5)) == make_rational(1, 10));
  Rng rng(666);
  for (const Rational& eps :
       {Rational(1), make_rational(1, 4), make_rational(1, 33)}) {
    Rational delta = union_modulus(odds, eps);
    CHECK(delta > 0);
    int accepted = 0;
    for (int trial = 0; trial < 1000 && accepted < 40; ++trial) {
      NatSet s = random_small_set(rng), t = random_small_set(rng);
      // measure by a safely convergent proxy: clip far out, then add the
      // certified geometric remainder when infinite
      auto clipped = [&](const NatSet& v) -> Rational {
        MembershipResult r = ideal_membership(odds, v);
        if (r.verdict != Verdict::In) return Rational(-1);
        return odds.partial_mass(v, 4000) + r.in_cert->bound_at(4000);
      };
      Rational ms = clipped(s), mt = clipped(t);
      if (ms < 0 || ms >= delta || mt < 0 || mt >= delta) continue;
      NatSet u;
      try {
        u = s.unite(t);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++accepted;
      MembershipResult ru = ideal_membership(odds, u);
      REQUIRE(ru.verdict == Verdict::In);  // both sides lie in the ideal
      Rational mu = odds.partial_mass(u, 4000) + ru.in_cert->bound_at(4000);
      CHECK(mu < eps);
    }
    CHECK(accepted >= 10);
  }
  // monotone in eps
  CHECK(union_modulus(odds, make_rational(1, 7)) <=
        union_modulus(odds, make_rational(1, 5)));
}

TEST_CASE("shift modulus forces both shifts under eps") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  Rng rng(777);
  for (const Rational& eps :
       {Rational(1), make_rational(1, 2), make_rational(1, 7), make_rational(1, 50)}) {
    Rational delta = shift_modulus(odds, eps);
    CHECK(delta > 0);
    // delta is a power of two; recover the exponent
    uint64_t j = 0;
    while (pow2(-(int64_t)j) != delta) {
      ++j;
      REQUIRE(j < 100000);
    }
    // pool of boundary-crossing members deep enough that any 8 keep total
    // mass under delta: carried weights at most delta/16
    std::vector<uint64_t> pool;
    for (uint64_t k = 1; pool.size() < 12; ++k) {
      if (k % 2 == 0) continue;  // carried blocks only
      if (block_lo(k) < j + 4) continue;
      pool.push_back(block_lo(k));      // may cross downward
      pool.push_back(block_hi(k));      // may cross upward
      pool.push_back(block_lo(k) + 1);  // interior stays cheap
    }
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<uint64_t> mem;
      for (int i = 0; i < 8; ++i)
        if (rng.coin()) mem.push_back(pool[rng.below(pool.size())]);
      NatSet s = NatSet::finite(mem);
      Rational ms = odds.mass(s);
      REQUIRE(ms < delta);
      CHECK(odds.mass(s.shift_up()) < eps);
      CHECK(odds.mass(s.shift_down()) < eps);
    }
  }
  // monotone in eps, and the constant family passes eps through
  CHECK(shift_modulus(odds, make_rational(1, 9)) <=
        shift_modulus(odds, make_rational(1, 3)));
  Submeasure cw = Submeasure::constant_weight(Rational(1));
  CHECK(shift_modulus(cw, make_rational(2, 5)) == make_rational(2, 5));
}

TEST_CASE("ideal inclusion matrix and witnesses") {
  Submeasure odds = Submeasure::dyadic_weighted(IndexSet::odds());
  Submeasure evens = Submeasure::dyadic_weighted(IndexSet::evens());
  Submeasure all = Submeasure::dyadic_weighted(IndexSet::all());
  Submeasure small = Submeasure::dyadic_weighted(IndexSet::finite({1, 3}));
  Submeasure cw = Submeasure::constant_weight(Rational(1));

  CHECK(ideal_inclusion(odds, odds).verdict == Verdict::In);
  CHECK(ideal_inclusion(odds, all).verdict == Verdict::In);
  CHECK(ideal_inclusion(small, evens).verdict == Verdict::In);
  CHECK(ideal_inclusion(cw, odds).verdict == Verdict::In);
  CHECK(ideal_inclusion(cw, cw).verdict == Verdict::In);

  std::vector<std::pair<Submeasure, Submeasure>> strict = {
      {all, odds}, {odds, evens}, {evens, odds}, {all, evens}, {odds, small}};
  for (const auto& [a, b] : strict) {
    InclusionResult r = ideal_inclusion(a, b);
    CHECK(r.verdict == Verdict::Out);
    REQUIRE(r.witness.has_value());
    CHECK(ideal_membership(a, *r.witness).verdict == Verdict::In);
    CHECK(ideal_membership(b, *r.witness).verdict == Verdict::Out);
    CHECK(r.witness_in.has_value());
    CHECK(r.witness_out.has_value());
  }

  InclusionResult dc = ideal_inclusion(odds, cw);
  CHECK(dc.verdict == Verdict::Out);
  REQUIRE(dc.witness.has_value());
  CHECK_FALSE(dc.witness->is_finite());
  CHECK(ideal_membership(odds, *dc.witness).verdict == Verdict::In);

  // finite carrier against the finite-set ideal: true but only via sets this
  // algebra cannot write down; the note has to say so
  InclusionResult fc = ideal_inclusion(small, cw);
  CHECK(fc.verdict == Verdict::Out);
  CHECK_FALSE(fc.witness.has_value());
  CHECK_FALSE(fc.note.empty());
}
