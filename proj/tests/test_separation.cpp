#include "cantor/separation.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cantor/base_seq.hpp"
#include "cantor/index_set.hpp"
#include "cantor/metric.hpp"
#include "cantor/mixed_radix.hpp"
#include "cantor/nat_set.hpp"
#include "cantor/rational.hpp"
#include "cantor/submeasure.hpp"
#include "doctest.h"

using namespace cantor;

namespace {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  uint64_t below(uint64_t n) {
    return std::uniform_int_distribution<uint64_t>(0, n - 1)(eng);
  }
  uint64_t between(uint64_t lo, uint64_t hi) {
    return std::uniform_int_distribution<uint64_t>(lo, hi)(eng);
  }
};

// independent greedy digit extraction straight from rational arithmetic
std::vector<Integer> ordigits(const BaseSeq& b, const Rational& r, uint64_t n) {
  Rational f = frac_part(r);
  std::vector<Integer> out;
  out.reserve(n);
  for (uint64_t i = 1; i <= n; ++i) {
    f *= Rational(b.value_at(i));
    Integer d = floor_int(f);
    out.push_back(d);
    f -= Rational(d);
  }
  return out;
}

// digit-change positions of a value whose expansion must terminate within cap
std::vector<uint64_t> orjump(const BaseSeq& b, const Rational& r,
                             uint64_t cap) {
  Rational f = frac_part(r);
  std::vector<Integer> digs;
  uint64_t n = 0;
  while (f != 0) {
    ++n;
    REQUIRE(n <= cap);
    f *= Rational(b.value_at(n));
    Integer d = floor_int(f);
    digs.push_back(d);
    f -= Rational(d);
  }
  digs.push_back(0);
  std::vector<uint64_t> out;
  for (uint64_t i = 1; i < digs.size(); ++i)
    if (digs[i - 1] != digs[i]) out.push_back(i);
  return out;
}

// independent weight: geometric on blocks inside x, harmonic elsewhere
Rational orweight(const IndexSet& x, uint64_t n) {
  if (x.contains(block_of(n))) return pow2(-static_cast<int64_t>(n));
  return make_rational(1, n);
}

Rational ormass(const IndexSet& x, const std::vector<uint64_t>& members) {
  Rational total(0);
  for (uint64_t n : members) total += orweight(x, n);
  return total;
}

Integer orprod(const BaseSeq& b, uint64_t n) {
  Integer p = 1;
  for (uint64_t i = 1; i <= n; ++i) p *= b.value_at(i);
  return p;
}

}  // namespace

TEST_CASE("alternating one-digits change exactly their dyadic block") {
  BaseSeq c10 = BaseSeq::constant(10);

  // documented small instance: ones at 5 and 7 change {4,5,6,7}
  DigitSpec bare;
  bare.digits[5] = 1;
  bare.digits[7] = 1;
  MixedRadixReal w = from_digit_spec(bare, c10);
  std::vector<uint64_t> expect{4, 5, 6, 7};
  CHECK(orjump(c10, w.value(), 20) == expect);
  REQUIRE(w.jump(1).full.has_value());
  CHECK(w.jump(1).full->members(100) == expect);

  // the same shape on random bases and blocks
  std::vector<BaseSeq> bases{c10, BaseSeq::primorial_blocks({2, 3, 5}),
                             BaseSeq::eventually_periodic({7}, {10})};
  for (const BaseSeq& b : bases) {
    for (uint64_t k = 2; k <= 6; ++k) {
      DigitSpec s;
      for (uint64_t p = (uint64_t(1) << (k - 1)) + 1;
           p <= (uint64_t(1) << k) - 1; p += 2)
        s.digits[p] = 1;
      MixedRadixReal v = from_digit_spec(s, b);
      std::vector<uint64_t> want;
      for (uint64_t n = uint64_t(1) << (k - 1); n <= (uint64_t(1) << k) - 1;
           ++n)
        want.push_back(n);
      CHECK(orjump(b, v.value(), 200) == want);
    }
  }
}

TEST_CASE("spike witness with unit scalar is the literal digit pattern") {
  BaseSeq c10 = BaseSeq::constant(10);
  MixedRadixReal y = spike_witness(c10, 3, Rational(1));

  // 0.0000101001: ones at positions 5, 7 and 10
  CHECK(y.value() == make_rational(101001, int_pow(10, 10)));
  std::vector<uint64_t> expect{4, 5, 6, 7, 9, 10};
  CHECK(orjump(c10, y.value(), 20) == expect);
  CHECK(y.value() < make_rational(1, int_pow(10, 4)));
  CHECK(y.digit(10) == 1);
  for (uint64_t n = 1; n <= 4; ++n) CHECK(y.digit(n) == 0);
}

TEST_CASE("spike witness approximates from above under uneven scalars") {
  BaseSeq c10 = BaseSeq::constant(10);
  // the pattern value 101001/10^10 is divisible by 3 but not by 7, so 5/7 of
  // it does not terminate and the rounding path must engage
  Rational c = make_rational(7, 5);
  MixedRadixReal y = spike_witness(c10, 3, c);
  MixedRadixReal z = from_digit_spec(
      [] {
        DigitSpec s;
        s.digits[5] = 1;
        s.digits[7] = 1;
        s.digits[10] = 1;
        return s;
      }(),
      c10);

  // y sits just above the pattern, close enough to share digits through 10
  CHECK(y.value() > z.value());
  CHECK(Rational(y.value() - z.value()) < make_rational(1, int_pow(10, 10)));
  auto yd = ordigits(c10, y.value(), 10);
  auto zd = ordigits(c10, z.value(), 10);
  CHECK(yd == zd);
  // and y/c lands back in the finite-digit module
  CHECK(MixedRadixReal(c10, Rational(y.value() / c)).expansion_terminates());

  // the same properties across bases, blocks and admissible scalars
  struct Case {
    BaseSeq b;
    std::vector<Rational> cs;
  };
  std::vector<Case> cases{
      {c10,
       {Rational(1), make_rational(3, 2), Rational(2), make_rational(7, 5),
        Rational(10)}},
      {BaseSeq::primorial_blocks({2, 3, 5}),
       {Rational(1), make_rational(3, 2), make_rational(5, 3),
        make_rational(15, 4)}},
      {BaseSeq::eventually_periodic({7}, {10}),
       {Rational(1), make_rational(9, 4), make_rational(13, 5)}}};
  for (const Case& tc : cases) {
    for (const Rational& sc : tc.cs) {
      for (uint64_t k = 2; k <= 5; ++k) {
        MixedRadixReal w = spike_witness(tc.b, k, sc);
        uint64_t half = uint64_t(1) << (k - 1);
        CHECK(w.value() < make_rational(1, orprod(tc.b, half)));
        auto digs = ordigits(tc.b, w.value(), (uint64_t(1) << k) + 2);
        for (uint64_t n = 1; n <= half; ++n) CHECK(digs[n - 1] == 0);
        // block coverage: consecutive digits differ across all of B_k
        for (uint64_t n = half; n <= (uint64_t(1) << k) - 1; ++n)
          CHECK(digs[n - 1] != digs[n]);
        CHECK(digs[((uint64_t(1) << k) + 2) - 1] != 0);
        CHECK(MixedRadixReal(tc.b, Rational(w.value() / sc))
                  .expansion_terminates());
      }
    }
  }
}

TEST_CASE("spike witness rejects bad blocks and scalars") {
  BaseSeq c10 = BaseSeq::constant(10);
  CHECK_THROWS_AS(spike_witness(c10, 1, Rational(1)), std::domain_error);
  CHECK_THROWS_AS(spike_witness(c10, 40, Rational(1)), std::domain_error);
  CHECK_THROWS_AS(spike_witness(c10, 3, make_rational(1, 2)),
                  std::domain_error);
  CHECK_THROWS_AS(spike_witness(c10, 3, make_rational(22, 7)),
                  std::domain_error);
}

TEST_CASE("flatten zeroes the mid-range and keeps prefix and far tail") {
  BaseSeq c10 = BaseSeq::constant(10);
  Submeasure phi = Submeasure::dyadic_weighted(IndexSet::odds());

  // dropping a lone digit in the zeroed middle
  Rational v_val = Rational(make_rational(101, int_pow(10, 7)) +
                            make_rational(1, int_pow(10, 12)));
  MixedRadixReal v(c10, v_val);
  MixedRadixReal w = flatten(v, 3, Rational(1), make_rational(1, 8), phi);
  CHECK(w.value() == make_rational(101, int_pow(10, 7)));

  // inputs already inside the kept prefix come back unchanged
  MixedRadixReal small(c10, make_rational(101, int_pow(10, 7)));
  CHECK(flatten(small, 3, Rational(1), make_rational(1, 8), phi).value() ==
        small.value());

  // far digits survive, the mid-range digit goes, prefix stays put
  Rational far_val = Rational(v_val + make_rational(1, int_pow(10, 40)));
  MixedRadixReal far(c10, far_val);
  MixedRadixReal fw = flatten(far, 3, Rational(1), make_rational(1, 2), phi);
  auto wd = ordigits(c10, fw.value(), 10);
  auto vd = ordigits(c10, far_val, 10);
  CHECK(wd == vd);
  CHECK(Rational(far_val - fw.value()) >= 0);
  CHECK(Rational(far_val - fw.value()) < make_rational(1, int_pow(10, 9)));
  CHECK(ormass(IndexSet::odds(), orjump(c10, fw.value(), 60)) <
        make_rational(1, 2));
}

TEST_CASE("flatten meets its closeness and mass contracts on random inputs") {
  BaseSeq c10 = BaseSeq::constant(10);
  IndexSet odds = IndexSet::odds();
  Submeasure phi = Submeasure::dyadic_weighted(odds);
  Rng rng(523);
  for (int t = 0; t < 120; ++t) {
    DigitSpec s;
    uint64_t terms = 1 + rng.below(6);
    for (uint64_t i = 0; i < terms; ++i)
      s.digits[rng.between(5, 36)] = Integer(1 + rng.below(9));
    MixedRadixReal v = from_digit_spec(s, c10);
    Rational c = rng.below(2) == 0 ? Rational(1) : make_rational(3, 2);
    MixedRadixReal w = flatten(v, 3, c, Rational(1), phi);

    // 0 <= v - w < 1/(c * a_1...a_9)
    Rational gap = Rational(v.value() - w.value());
    CHECK(gap >= 0);
    CHECK(Rational(gap * c) < make_rational(1, int_pow(10, 9)));
    // kept prefix identical, mass bound exact
    CHECK(ordigits(c10, w.value(), 10) == ordigits(c10, v.value(), 10));
    CHECK(ormass(odds, orjump(c10, w.value(), 60)) < Rational(1));
  }
}

TEST_CASE("flatten refuses missing certificates and unreachable bounds") {
  BaseSeq c10 = BaseSeq::constant(10);
  Submeasure phi = Submeasure::dyadic_weighted(IndexSet::odds());

  // no classified change set: digits of 1/3^20 never settle within budget
  MixedRadixReal murky(
      c10, make_rational(1, Integer(int_pow(3, 20) * int_pow(10, 4))));
  CHECK_THROWS_AS(flatten(murky, 3, Rational(1), Rational(1), phi),
                  std::invalid_argument);

  // the kept prefix alone already outweighs eps: no cut can help
  MixedRadixReal v(c10, Rational(make_rational(101, int_pow(10, 7)) +
                                 make_rational(1, int_pow(10, 12))));
  CHECK_THROWS_AS(flatten(v, 3, Rational(1), make_rational(1, 100), phi),
                  std::invalid_argument);

  // out-of-range inputs and degenerate parameters
  MixedRadixReal big(c10, make_rational(1, 2));
  CHECK_THROWS_AS(flatten(big, 3, Rational(1), Rational(1), phi),
                  std::domain_error);
  CHECK_THROWS_AS(flatten(v, 3, Rational(1), Rational(0), phi),
                  std::invalid_argument);
  CHECK_THROWS_AS(flatten(v, 3, make_rational(1, 2), Rational(1), phi),
                  std::domain_error);
}

TEST_CASE("separation certificate pins the documented witness values") {
  BaseSeq c10 = BaseSeq::constant(10);
  IndexSet odds = IndexSet::odds();
  IndexSet evens = IndexSet::evens();
  SeparationCertificate cert =
      separation_certificate(odds, evens, Rational(1), 5, c10);

  CHECK(cert.scalar == Rational(1));
  CHECK(cert.threshold == make_rational(1, 2));
  REQUIRE(cert.witnesses.size() == 5);
  std::vector<uint64_t> ks;
  for (const auto& wit : cert.witnesses) ks.push_back(wit.k);
  CHECK(ks == std::vector<uint64_t>{3, 5, 7, 9, 11});

  // the block-5 witness, digit for digit and mass for mass
  const SeparationWitness& w5 = cert.witnesses[1];
  Rational expect_val(0);
  for (uint64_t i = 17; i <= 31; i += 2)
    expect_val += make_rational(1, int_pow(10, i));
  CHECK(w5.value == expect_val);
  CHECK(w5.bound == make_rational(1, int_pow(10, 16)));
  Rational expect_phi(0);
  for (uint64_t n = 16; n <= 31; ++n) expect_phi += pow2(-int64_t(n));
  CHECK(w5.phi_first == expect_phi);
  CHECK(w5.phi_first == Rational(pow2(-15) - pow2(-31)));
  Rational expect_psi(0);
  for (uint64_t n = 16; n <= 31; ++n) expect_psi += make_rational(1, n);
  CHECK(w5.psi_second == expect_psi);
  CHECK(w5.psi_second >= make_rational(1, 2));

  for (size_t i = 0; i < cert.witnesses.size(); ++i) {
    const SeparationWitness& wit = cert.witnesses[i];
    // every value recomputable from the digit spec, all masses by oracle
    MixedRadixReal w = from_digit_spec(wit.spec, c10);
    CHECK(w.value() == wit.value);
    CHECK(wit.value > 0);
    CHECK(wit.value < wit.bound);
    CHECK(wit.bound ==
          make_rational(1, int_pow(10, uint64_t(1) << (wit.k - 1))));
    auto jw = orjump(c10, wit.value, 3000);
    CHECK(ormass(odds, jw) == wit.phi_first);
    CHECK(ormass(evens, jw) == wit.psi_second);  // c = 1: same change set
    if (wit.k >= 5) {
      CHECK(wit.value < make_rational(1, int_pow(10, 16)));
      CHECK(wit.phi_first < pow2(-14));
    }
    CHECK(wit.psi_second >= cert.threshold);
    if (i > 0) CHECK(wit.phi_first < cert.witnesses[i - 1].phi_first);
  }
}

TEST_CASE("separation certificate survives scaling by 3/2") {
  BaseSeq c10 = BaseSeq::constant(10);
  IndexSet odds = IndexSet::odds();
  IndexSet evens = IndexSet::evens();
  Rational c = make_rational(3, 2);
  SeparationCertificate cert = separation_certificate(odds, evens, c, 4, c10);

  REQUIRE(cert.witnesses.size() == 4);
  for (size_t i = 0; i < cert.witnesses.size(); ++i) {
    const SeparationWitness& wit = cert.witnesses[i];
    CHECK(wit.value < wit.bound);
    CHECK(ormass(odds, orjump(c10, wit.value, 3000)) == wit.phi_first);
    // the scaled witness is checked against its own change set
    Rational cw = Rational(c * wit.value);
    CHECK(ormass(evens, orjump(c10, cw, 3000)) == wit.psi_second);
    CHECK(wit.psi_second >= make_rational(1, 2));
    CHECK(wit.phi_first <= Rational(2 * pow2(-int64_t(uint64_t(1) << (wit.k - 1)))));
    if (i > 0) CHECK(wit.phi_first < cert.witnesses[i - 1].phi_first);
  }

  // and on a block-structured base whose support contains 2
  BaseSeq pb = BaseSeq::primorial_blocks({2, 3, 5});
  SeparationCertificate pcert = separation_certificate(odds, evens, c, 3, pb);
  REQUIRE(pcert.witnesses.size() == 3);
  for (const auto& wit : pcert.witnesses) {
    CHECK(wit.value < make_rational(1, orprod(pb, uint64_t(1) << (wit.k - 1))));
    CHECK(ormass(odds, orjump(pb, wit.value, 3000)) == wit.phi_first);
    CHECK(ormass(evens, orjump(pb, Rational(c * wit.value), 3000)) ==
          wit.psi_second);
    CHECK(wit.psi_second >= make_rational(1, 2));
  }
}

TEST_CASE("separation certificate rejects unseparable or malformed requests") {
  BaseSeq c10 = BaseSeq::constant(10);
  IndexSet odds = IndexSet::odds();
  IndexSet evens = IndexSet::evens();

  CHECK_THROWS_AS(
      separation_certificate(odds, evens, make_rational(1, 2), 2, c10),
      std::domain_error);
  CHECK_THROWS_AS(
      separation_certificate(odds, evens, make_rational(22, 7), 2, c10),
      std::domain_error);
  // first ideal inside the second: difference finite or empty
  CHECK_THROWS_AS(separation_certificate(evens, IndexSet::all(), Rational(1),
                                         2, c10),
                  std::domain_error);
  CHECK_THROWS_AS(separation_certificate(odds, odds, Rational(1), 2, c10),
                  std::domain_error);
  IndexSet almost_all = IndexSet::finite({9}).complement();
  CHECK_THROWS_AS(
      separation_certificate(odds, almost_all, Rational(1), 2, c10),
      std::domain_error);
  // base whose own change set escapes the ideals
  BaseSeq wild = BaseSeq::eventually_periodic({}, {2, 3});
  CHECK_THROWS_AS(separation_certificate(odds, evens, Rational(1), 2, wild),
                  std::domain_error);
}

TEST_CASE("witnesses shrink to zero in one metric, stay far in the other") {
  BaseSeq c10 = BaseSeq::constant(10);
  IndexSet odds = IndexSet::odds();
  IndexSet evens = IndexSet::evens();
  Submeasure phi = Submeasure::dyadic_weighted(odds);
  Submeasure psi = Submeasure::dyadic_weighted(evens);
  Rational c = make_rational(3, 2);
  SeparationCertificate cert = separation_certificate(odds, evens, c, 4, c10);

  SignedReal zero(c10, Rational(0));
  Rational prev(-1);
  for (size_t i = 0; i < cert.witnesses.size(); ++i) {
    const SeparationWitness& wit = cert.witnesses[i];
    SignedReal w(c10, wit.value);
    RhoValue near = rho(phi, w, zero, 4200);
    REQUIRE(near.exact().has_value());
    CHECK(*near.exact() == Rational(wit.value + wit.phi_first));
    if (i > 0) CHECK(*near.exact() < prev);
    prev = *near.exact();

    SignedReal cw(c10, Rational(c * wit.value));
    RhoValue sep = rho(psi, cw, zero, 4200);
    REQUIRE(sep.exact().has_value());
    CHECK(*sep.exact() >= cert.threshold);
  }
}
