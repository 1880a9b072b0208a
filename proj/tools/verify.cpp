#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>

#include "cantor/base_seq.hpp"
#include "cantor/index_set.hpp"
#include "cantor/metric.hpp"
#include "cantor/mixed_radix.hpp"
#include "cantor/nat_set.hpp"
#include "cantor/rational.hpp"
#include "cantor/separation.hpp"
#include "cantor/submeasure.hpp"

namespace cantor::verify {

namespace {

using Clock = std::chrono::steady_clock;

struct Ctx {
  uint64_t seed = 0;
  uint64_t trials = 0;
  std::vector<CheckReport>* out = nullptr;
  size_t check_index = 0;

  // one check = one named loop; each gets its own deterministic stream
  void check(const std::string& name, uint64_t n,
             const std::function<bool(std::mt19937_64&, uint64_t)>& body) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 0x243F6A8885A308D3ull +
                        check_index++);
    CheckReport rep;
    rep.name = name;
    auto t0 = Clock::now();
    for (uint64_t i = 0; i < n; ++i) {
      ++rep.trials;
      if (!body(rng, i)) ++rep.failures;
    }
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    out->push_back(std::move(rep));
  }
};

const std::vector<BaseSeq>& bases() {
  static const std::vector<BaseSeq> b{
      BaseSeq::constant(10),
      BaseSeq::eventually_periodic({2, 3, 4}, {6, 10}),
      BaseSeq::primorial_blocks({2, 3, 5, 7})};
  return b;
}

uint64_t draw(std::mt19937_64& g, uint64_t lo, uint64_t hi) {
  return std::uniform_int_distribution<uint64_t>(lo, hi)(g);
}

Rational rand_rational(std::mt19937_64& g, uint64_t num_cap, uint64_t den_cap,
                       bool allow_negative) {
  Rational q = make_rational(Integer(static_cast<unsigned long>(draw(g, 0, num_cap))),
                             Integer(static_cast<unsigned long>(draw(g, 1, den_cap))));
  if (allow_negative && draw(g, 0, 1)) q = -q;
  return q;
}

// ---- digit-rules ----------------------------------------------------------

void suite_digit_rules(Ctx& cx) {
  cx.check("digit-range", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const BaseSeq& b = bases()[i % bases().size()];
    MixedRadixReal r(b, Rational(abs(rand_rational(g, 1000000, 2000, true))));
    for (uint64_t n = 1; n <= 48; ++n) {
      Integer d = r.digit(n);
      if (d < 0 || d >= b.value_at(n)) return false;
    }
    return true;
  });

  cx.check("prefix-reconstruction", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const BaseSeq& b = bases()[i % bases().size()];
    Rational v = abs(rand_rational(g, 1000000, 2000, true));
    MixedRadixReal r(b, v);
    Rational acc(r.integer_part());
    Integer prod = 1;
    for (uint64_t n = 1; n <= 48; ++n) {
      prod *= b.value_at(n);
      acc += make_rational(r.digit(n), prod);
    }
    if (acc != r.truncate(48)) return false;
    Rational rem = Rational(v - acc);
    return rem >= 0 && rem < make_rational(1, prod);
  });

  cx.check("integer-iff-zero-digits", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const BaseSeq& b = bases()[i % bases().size()];
    // half the draws are integers; denominators stay far below the digit
    // window's product, so a nonzero fraction must show a nonzero digit
    Rational v = abs(rand_rational(g, 1000000, 2000, false));
    if (i % 2 == 0) v = Rational(floor_int(v));
    MixedRadixReal r(b, v);
    bool all_zero = true;
    for (uint64_t n = 1; n <= 40 && all_zero; ++n) all_zero = r.digit(n) == 0;
    return all_zero == (frac_part(v) == 0);
  });

  cx.check("truncation-digit-agreement", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const BaseSeq& b = bases()[i % bases().size()];
    MixedRadixReal r(b, Rational(abs(rand_rational(g, 1000000, 2000, true))));
    uint64_t l = draw(g, 0, 40);
    MixedRadixReal t(b, r.truncate(l));
    for (uint64_t n = 1; n <= l; ++n)
      if (t.digit(n) != r.digit(n)) return false;
    for (uint64_t n = l + 1; n <= l + 8; ++n)
      if (t.digit(n) != 0) return false;
    return true;
  });
}

// ---- jump-algebra ---------------------------------------------------------

std::vector<uint64_t> changes_up_to(const MixedRadixReal& r, uint64_t n) {
  std::vector<uint64_t> out;
  Integer prev = r.digit(1);
  for (uint64_t i = 1; i <= n; ++i) {
    Integer next = r.digit(i + 1);
    if (prev != next) out.push_back(i);
    prev = next;
  }
  return out;
}

void suite_jump_algebra(Ctx& cx) {
  auto body = [](bool sum) {
    return [sum](std::mt19937_64& g, uint64_t i) {
      const BaseSeq& b = bases()[i % bases().size()];
      Rational rv = abs(rand_rational(g, 100000, 500, true));
      Rational sv = abs(rand_rational(g, 100000, 500, true));
      MixedRadixReal r(b, rv), s(b, sv);
      std::vector<uint64_t> bound = jump_algebra_bound(r, s, 64);
      Rational uv;
      if (sum) uv = rv + sv;
      else if (rv >= sv) uv = rv - sv;
      else uv = sv - rv;
      MixedRadixReal u(b, uv);
      for (uint64_t n : changes_up_to(u, 64))
        if (!std::binary_search(bound.begin(), bound.end(), n)) return false;
      return true;
    };
  };
  cx.check("sum-change-bound", cx.trials, body(true));
  cx.check("difference-change-bound", cx.trials, body(false));
}

// ---- moduli ----------------------------------------------------------------

NatSet small_mass_set(std::mt19937_64& g, const Submeasure& phi,
                      const Rational& budget) {
  // every member individually below budget/size keeps the total strictly
  // under the budget; geometric weights reach any budget a few blocks past
  // its bit length, harmonic ones only when 1/per still fits in a machine
  // word, so candidates come from those two windows
  uint64_t size = draw(g, 1, 10);
  Rational per = Rational(budget / Rational(static_cast<unsigned long>(size)));

  uint64_t e = 2;  // least exponent with geometric weight below the budget
  while (e < (uint64_t(1) << 21) && !(pow2(-static_cast<int64_t>(e)) < per)) ++e;

  std::optional<uint64_t> harmonic_start;
  Integer inv = floor_int(Rational(1) / per);
  if (inv.fits_ulong_p()) harmonic_start = inv.get_ui() + 2;

  std::vector<uint64_t> members;
  for (int attempt = 0; attempt < 400 && members.size() < size; ++attempt) {
    uint64_t n;
    if (harmonic_start && draw(g, 0, 1) == 0) {
      n = *harmonic_start + draw(g, 0, 900);
      // far-out candidates must sit in harmonic territory with harmonic
      // neighbors, or a later shift could ask for an astronomical 2^-n
      if (n > 100000 &&
          (phi.carried(n - 1) || phi.carried(n) || phi.carried(n + 1)))
        continue;
    } else {
      uint64_t k = block_of(e + 1) + draw(g, 0, 5);
      n = block_lo(k) +
          draw(g, 0, std::min<uint64_t>(900, block_hi(k) - block_lo(k)));
      if (n > 100000 && phi.carried(n)) continue;
    }
    if (phi.weight_at(n) < per) members.push_back(n);
  }
  return NatSet::finite(std::move(members));  // duplicates collapse; mass only drops
}

void suite_moduli(Ctx& cx) {
  static const std::vector<Submeasure> phis{
      Submeasure::dyadic_weighted(IndexSet::odds()),
      Submeasure::dyadic_weighted(IndexSet::finite({2, 5})),
      Submeasure::dyadic_weighted(IndexSet::evens())};

  cx.check("tall-singleton-mass", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const Submeasure& phi = phis[i % phis.size()];
    Rational eps = make_rational(1, 1 + draw(g, 0, 50));
    uint64_t t = tall_threshold(phi, eps);
    for (uint64_t n : {t, t + 1, t + 13, t + draw(g, 0, 200)})
      if (!(phi.weight_at(n) < eps)) return false;
    return true;
  });

  cx.check("union-modulus-implication", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const Submeasure& phi = phis[i % phis.size()];
    Rational eps = make_rational(1, 2 + draw(g, 0, 30));
    Rational delta = union_modulus(phi, eps);
    NatSet s = small_mass_set(g, phi, delta);
    NatSet t = small_mass_set(g, phi, delta);
    if (!(phi.mass(s) < delta && phi.mass(t) < delta)) return false;
    return phi.mass(s.unite(t)) < eps;
  });

  cx.check("shift-modulus-implication", cx.trials, [](std::mt19937_64& g, uint64_t i) {
    const Submeasure& phi = phis[i % phis.size()];
    Rational eps = make_rational(1, 2 + draw(g, 0, 30));
    Rational delta = shift_modulus(phi, eps);
    NatSet s = small_mass_set(g, phi, delta);
    if (!(phi.mass(s) < delta)) return false;
    return phi.mass(s.shift_up()) < eps && phi.mass(s.shift_down()) < eps;
  });
}

// ---- triangle ---------------------------------------------------------------

void suite_triangle(Ctx& cx) {
  cx.check("certified-triangle-inequality", cx.trials,
           [](std::mt19937_64& g, uint64_t i) {
             static const BaseSeq b = BaseSeq::constant(10);
             static const Submeasure phi =
                 Submeasure::dyadic_weighted(IndexSet::odds());
             static const std::vector<Rational> epss{
                 Rational(1), make_rational(1, 10), make_rational(1, 100)};
             static std::vector<Rational> deltas = [] {
               std::vector<Rational> d;
               for (const Rational& e : epss)
                 d.push_back(rho_triangle_modulus(phi, b, e));
               return d;
             }();
             const Rational& eps = epss[i % epss.size()];
             const Rational& delta = deltas[i % epss.size()];

             // differences supported deep inside one carried block keep both
             // premise masses far below delta
             auto bump = [&](int count) {
               Rational v(0);
               for (int t = 0; t < count; ++t)
                 v += make_rational(draw(g, 0, 9),
                                    int_pow(10, draw(g, 66, 120)));
               return v;
             };
             Rational rv = rand_rational(g, 1000, 50, true);
             Rational sv = Rational(rv + bump(2));
             Rational tv = Rational(sv + bump(2));
             SignedReal r(b, rv), s(b, sv), t(b, tv);
             RhoValue rs = rho(phi, r, s, 140);
             RhoValue st = rho(phi, s, t, 140);
             if (!(rs.exact() && st.exact() && *rs.exact() < delta &&
                   *st.exact() < delta))
               return true;  // premise missed (rare); implication is vacuous
             RhoValue rt = rho(phi, r, t, 140);
             return rt.exact() && *rt.exact() < eps;
           });
}

// ---- density ----------------------------------------------------------------

void suite_density(Ctx& cx) {
  uint64_t kmax = std::min<uint64_t>(20, std::max<uint64_t>(8, cx.trials));
  cx.check("block-harmonic-at-least-half", kmax,
           [](std::mt19937_64&, uint64_t i) {
             uint64_t k = i + 1;
             return harmonic_range_sum(block_lo(k), block_hi(k)) >=
                    make_rational(1, 2);
           });
  cx.check("block-3-exact-value", 1, [](std::mt19937_64&, uint64_t) {
    return harmonic_range_sum(4, 7) == make_rational(319, 420);
  });
  cx.check("split-summation-agrees-with-direct", 10,
           [](std::mt19937_64&, uint64_t i) {
             uint64_t k = i + 1;
             Rational direct(0);
             for (uint64_t n = block_lo(k); n <= block_hi(k); ++n)
               direct += make_rational(1, n);
             return harmonic_range_sum(block_lo(k), block_hi(k)) == direct;
           });
}

// ---- family -----------------------------------------------------------------

void suite_family(Ctx& cx) {
  static const Submeasure odd_w = Submeasure::dyadic_weighted(IndexSet::odds());
  static const Submeasure even_w =
      Submeasure::dyadic_weighted(IndexSet::evens());

  cx.check("carried-block-mass-bounds", 17, [](std::mt19937_64&, uint64_t i) {
    uint64_t k = i + 3;  // 3..19
    const Submeasure& phi = (k % 2 == 1) ? odd_w : even_w;
    Rational m = phi.mass(dyadic_block(k));
    if (m != geometric_range_sum(block_lo(k), block_hi(k))) return false;
    Rational cap = make_rational(2, pow2_int(block_lo(k)));
    if (!(m <= cap && m < pow2(-int64_t(k)))) return false;
    // the closed-form cap itself only drops strictly below 2^-k from k=4 on;
    // at k=3 the two coincide while the actual mass stays strictly smaller
    return k == 3 || cap < pow2(-int64_t(k));
  });

  cx.check("uncarried-block-mass-at-least-half", 13,
           [](std::mt19937_64&, uint64_t i) {
             uint64_t k = i + 3;  // 3..15
             const Submeasure& psi = (k % 2 == 1) ? even_w : odd_w;
             Rational m = psi.mass(dyadic_block(k));
             if (m != harmonic_range_sum(block_lo(k), block_hi(k))) return false;
             return m >= make_rational(1, 2);
           });
}

// ---- separation --------------------------------------------------------------

void suite_separation(Ctx& cx) {
  uint64_t count = std::min<uint64_t>(5, std::max<uint64_t>(2, cx.trials));
  static const BaseSeq b = BaseSeq::constant(10);
  static const IndexSet odds = IndexSet::odds();
  static const IndexSet evens = IndexSet::evens();
  static const Submeasure phi = Submeasure::dyadic_weighted(odds);
  static const Submeasure psi = Submeasure::dyadic_weighted(evens);

  for (const Rational& c : {Rational(1), make_rational(3, 2)}) {
    SeparationCertificate cert =
        separation_certificate(odds, evens, c, count, b);
    std::string label =
        "witness-contract-c-" + rational_str(c);
    // one trial per witness: (a) smallness, (b) first mass with its bound,
    // (c) second mass at least d, all recomputed from the digit spec
    cx.check(label, cert.witnesses.size(), [&cert, c](std::mt19937_64&,
                                                      uint64_t i) {
      const SeparationWitness& w = cert.witnesses[i];
      MixedRadixReal wr = from_digit_spec(w.spec, b);
      if (wr.value() != w.value) return false;
      if (!(w.value > 0 && w.value < w.bound)) return false;
      if (w.bound != make_rational(1, b.product_upto(block_lo(w.k)))) return false;
      JumpResult jw = wr.jump(1);
      if (!jw.full || phi.mass(*jw.full) != w.phi_first) return false;
      if (!(w.phi_first <= make_rational(2, pow2_int(block_lo(w.k)))))
        return false;
      MixedRadixReal cw(b, Rational(c * w.value));
      JumpResult jcw = cw.jump(1);
      if (!jcw.full || psi.mass(*jcw.full) != w.psi_second) return false;
      if (!(w.psi_second >= cert.threshold)) return false;
      if (i > 0 && !(w.phi_first < cert.witnesses[i - 1].phi_first))
        return false;
      return cert.threshold == make_rational(1, 2);
    });
  }
}

// ---- division -----------------------------------------------------------------

void suite_division(Ctx& cx) {
  cx.check("prime-division-digit-formula", cx.trials,
           [](std::mt19937_64& g, uint64_t i) {
             const BaseSeq& b = bases()[i % bases().size()];
             uint64_t p = b.primes()[draw(g, 0, b.primes().size() - 1)];
             Rational v = abs(rand_rational(g, 100000, 3000, false));
             MixedRadixReal r(b, v);
             std::vector<Integer> got = div_by_prime_digits(r, p, 96);
             MixedRadixReal q(b, Rational(v / Rational(static_cast<unsigned long>(p))));
             for (uint64_t n = 1; n <= 96; ++n)
               if (got[n - 1] != q.digit(n)) return false;
             return true;
           });
}

}  // namespace

bool SuiteReport::ok() const {
  for (const CheckReport& c : checks)
    if (c.failures != 0) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "digit-rules", "jump-algebra", "moduli",     "triangle",
      "density",     "family",       "separation", "division"};
  return names;
}

SuiteReport run_suite(const std::string& suite, uint64_t seed,
                      uint64_t trials) {
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  rep.trials = trials;
  Ctx cx;
  cx.seed = seed;
  cx.trials = trials;
  cx.out = &rep.checks;

  if (suite == "digit-rules") suite_digit_rules(cx);
  else if (suite == "jump-algebra") suite_jump_algebra(cx);
  else if (suite == "moduli") suite_moduli(cx);
  else if (suite == "triangle") suite_triangle(cx);
  else if (suite == "density") suite_density(cx);
  else if (suite == "family") suite_family(cx);
  else if (suite == "separation") suite_separation(cx);
  else if (suite == "division") suite_division(cx);
  else throw std::domain_error("unknown suite: " + suite);
  return rep;
}

}  // namespace cantor::verify
