#include "cantor/submeasure.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

namespace cantor {

namespace {

Integer uint_to_mpz(uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

Rational uint_to_mpq(uint64_t v) { return Rational(uint_to_mpz(v)); }

// first member of {n : n == target (mod step)} at or past `from`; 0 if > cap
uint64_t ap_first_at_least(uint64_t target, uint64_t step, uint64_t from) {
  return from + ((target % step) + step - (from % step)) % step;
}

uint64_t ap_count_in(uint64_t target, uint64_t step, uint64_t lo, uint64_t hi) {
  if (lo > hi) return 0;
  uint64_t f = ap_first_at_least(target, step, lo);
  if (f > hi) return 0;
  return (hi - f) / step + 1;
}

// invoke f(block, u, v) for the pieces of [lo, hi] cut at dyadic block edges
template <typename F>
void for_block_pieces(uint64_t lo, uint64_t hi, F f) {
  uint64_t u = lo;
  while (u <= hi) {
    uint64_t b = block_of(u);
    uint64_t v = std::min(hi, block_hi(b));
    f(b, u, v);
    if (v == UINT64_MAX) break;
    u = v + 1;
  }
}

uint64_t abs_offset(int64_t o) { return o < 0 ? static_cast<uint64_t>(-o) : static_cast<uint64_t>(o); }

// Geometric weights at positions beyond this are never materialized exactly;
// upper bounds substitute 2^-kExpCap, keeping every certificate representable
// even for member positions like 2^49.
constexpr uint64_t kExpCap = uint64_t(1) << 16;

}  // namespace

Rational harmonic_ap_sum(uint64_t first, uint64_t step, uint64_t count) {
  if (first == 0 || step == 0)
    throw std::invalid_argument("harmonic sums need first >= 1 and step >= 1");
  if (count == 0) return Rational(0);
  if (count <= 8) {
    Rational total(0);
    for (uint64_t t = 0; t < count; ++t)
      total += make_rational(1, uint_to_mpz(first + t * step));
    return total;
  }
  uint64_t half = count / 2;
  return harmonic_ap_sum(first, step, half) +
         harmonic_ap_sum(first + half * step, step, count - half);
}

Rational harmonic_range_sum(uint64_t lo, uint64_t hi) {
  if (lo < 1) lo = 1;
  if (lo > hi) return Rational(0);
  return harmonic_ap_sum(lo, 1, hi - lo + 1);
}

Rational geometric_ap_sum(uint64_t first, uint64_t step, uint64_t count) {
  if (step == 0) throw std::invalid_argument("geometric sums need step >= 1");
  if (count == 0) return Rational(0);
  // 2^-first * (1 - 2^-(step*count)) / (1 - 2^-step)
  Integer num = pow2_int(step * count) - 1;
  Integer den = pow2_int(first + step * (count - 1)) * (pow2_int(step) - 1);
  return make_rational(num, den);
}

Rational geometric_range_sum(uint64_t lo, uint64_t hi) {
  if (lo < 1) lo = 1;
  if (lo > hi) return Rational(0);
  return pow2(-static_cast<int64_t>(lo - 1)) - pow2(-static_cast<int64_t>(hi));
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::In: return "in";
    case Verdict::Out: return "out";
    default: return "unknown";
  }
}

std::string mass_kind_str(MassKind k) {
  switch (k) {
    case MassKind::Exact: return "exact";
    case MassKind::LowerBound: return "lower-bound";
    default: return "infinite";
  }
}

Rational InCertificate::bound_at(uint64_t n) const {
  Rational total(0);
  for (const auto& r : runs) {
    uint64_t u = std::max(r.lo, n + 1);
    if (u > r.hi) continue;
    if (r.carried) {
      if (u - 1 >= kExpCap)
        total += pow2(-static_cast<int64_t>(kExpCap));
      else if (r.hi - u > 80)
        total += pow2(-static_cast<int64_t>(u - 1));
      else
        total += geometric_range_sum(u, r.hi);
    } else {
      total += make_rational(uint_to_mpz(r.hi - u + 1), uint_to_mpz(u));
    }
  }
  if (geo_start)
    total += pow2(-static_cast<int64_t>(
        std::min(std::max(n, geo_start), kExpCap)));
  if (sliver_per) {
    uint64_t b = std::max(sliver_from_block, block_of(n + 1));
    total += uint_to_mpq(sliver_per) * pow2(4 - static_cast<int64_t>(b));
  }
  if (!flat_members.empty()) {
    uint64_t cnt = 0;
    for (uint64_t m : flat_members)
      if (m > n) ++cnt;
    total += uint_to_mpq(cnt) * flat_weight;
  }
  return total;
}

uint64_t InCertificate::threshold_for(const Rational& eps) const {
  if (eps <= 0) throw std::invalid_argument("threshold needs eps > 0");
  if (bound_at(0) < eps) return 0;
  uint64_t lo = 0, hi = 1;
  while (bound_at(hi) >= eps) {
    if (hi > (uint64_t(1) << 62))
      throw std::logic_error("tail bound does not fall under eps");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (bound_at(mid) < eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Submeasure Submeasure::dyadic_weighted(IndexSet carrier) {
  return Submeasure(Kind::DyadicWeighted, std::move(carrier), Rational(0));
}

Submeasure Submeasure::constant_weight(const Rational& w) {
  if (w <= 0) throw std::invalid_argument("constant weight must be positive");
  return Submeasure(Kind::ConstantWeight, IndexSet::none(), w);
}

const IndexSet& Submeasure::carrier() const {
  if (kind_ != Kind::DyadicWeighted)
    throw std::logic_error("carrier(): not a dyadic-weighted submeasure");
  return carrier_;
}

const Rational& Submeasure::constant() const {
  if (kind_ != Kind::ConstantWeight)
    throw std::logic_error("constant(): not a constant-weight submeasure");
  return weight_;
}

std::string Submeasure::describe() const {
  if (kind_ == Kind::DyadicWeighted)
    return "dyadic-weighted(prefix=" + carrier_.prefix_bits() +
           ", period=" + carrier_.period_bits() + ")";
  return "constant-weight(" + rational_str(weight_) + ")";
}

bool Submeasure::carried(uint64_t n) const {
  return kind_ == Kind::DyadicWeighted && n >= 1 && carrier_.contains(block_of(n));
}

Rational Submeasure::weight_at(uint64_t n) const {
  if (n < 1) throw std::invalid_argument("positions start at 1");
  if (kind_ == Kind::ConstantWeight) return weight_;
  if (carried(n)) return pow2(-static_cast<int64_t>(n));
  return make_rational(1, uint_to_mpz(n));
}

Rational Submeasure::mass_range(const NatSet& s, uint64_t lo, uint64_t hi) const {
  if (lo < 1) lo = 1;
  if (lo > hi) return Rational(0);
  Rational total(0);

  auto ap_mass = [&](bool carried_b, uint64_t f, uint64_t step, uint64_t m) -> Rational {
    if (m == 0) return Rational(0);
    if (kind_ == Kind::ConstantWeight) return uint_to_mpq(m) * weight_;
    return carried_b ? geometric_ap_sum(f, step, m) : harmonic_ap_sum(f, step, m);
  };
  auto carried_block = [&](uint64_t b) {
    return kind_ == Kind::DyadicWeighted && carrier_.contains(b);
  };

  if (s.tail_is_empty()) {
    for (uint64_t n : s.members()) {
      if (n < lo) continue;
      if (n > hi) break;
      total += weight_at(n);
    }
    return total;
  }
  uint64_t settled = s.settled_after();
  for (uint64_t n = lo; n <= std::min(hi, settled); ++n)
    if (s.contains(n)) total += weight_at(n);
  uint64_t a = std::max(lo, settled + 1);
  if (a > hi) return total;

  if (s.tail_is_periodic()) {
    const auto& t = std::get<PeriodicTail>(s.tail());
    uint64_t pre = t.prefix.size(), per = t.period.size();
    for_block_pieces(a, hi, [&](uint64_t b, uint64_t u, uint64_t v) {
      bool cb = carried_block(b);
      for (uint64_t rho = 0; rho < per; ++rho) {
        if (!t.period[rho]) continue;
        uint64_t target = (pre + 1 + rho) % per;
        uint64_t f = ap_first_at_least(target, per, u);
        if (f > v) continue;
        total += ap_mass(cb, f, per, (v - f) / per + 1);
      }
    });
    return total;
  }

  const auto& d = std::get<DyadicTail>(s.tail());
  int64_t o = d.offset;
  if (static_cast<int64_t>(hi) + o < 1) return total;
  uint64_t mlo = static_cast<int64_t>(a) + o < 1
                     ? 1
                     : static_cast<uint64_t>(static_cast<int64_t>(a) + o);
  uint64_t mhi = static_cast<uint64_t>(static_cast<int64_t>(hi) + o);
  for (uint64_t k = block_of(mlo); k <= block_of(mhi); ++k) {
    if (!d.index.contains(k)) continue;
    int64_t plo = static_cast<int64_t>(block_lo(k)) - o;
    int64_t phi_hi = static_cast<int64_t>(block_hi(k)) - o;
    if (phi_hi < static_cast<int64_t>(a)) continue;
    uint64_t u0 = plo < static_cast<int64_t>(a) ? a : static_cast<uint64_t>(plo);
    uint64_t v0 = phi_hi > static_cast<int64_t>(hi) ? hi : static_cast<uint64_t>(phi_hi);
    if (u0 > v0) continue;
    for_block_pieces(u0, v0, [&](uint64_t b, uint64_t u, uint64_t v) {
      total += ap_mass(carried_block(b), u, 1, v - u + 1);
    });
  }
  return total;
}

Rational Submeasure::partial_mass(const NatSet& s, uint64_t n) const {
  return mass_range(s, 1, n);
}

Rational Submeasure::mass(const NatSet& s) const {
  if (!s.is_finite())
    throw std::invalid_argument("mass of an infinite set; use total_mass");
  auto mx = s.max_member();
  if (!mx) return Rational(0);
  return mass_range(s, 1, *mx);
}

bool Submeasure::operator==(const Submeasure& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::DyadicWeighted) return carrier_ == o.carrier_;
  return weight_ == o.weight_;
}

namespace {

// contiguous member intervals, cut at block edges so the weight shape is
// uniform per run; x == nullptr means nothing is carried
void compress_into_runs(const IndexSet* x, const std::vector<uint64_t>& mem,
                        std::vector<InRun>& out) {
  size_t i = 0;
  while (i < mem.size()) {
    size_t j = i;
    while (j + 1 < mem.size() && mem[j + 1] == mem[j] + 1) ++j;
    for_block_pieces(mem[i], mem[j], [&](uint64_t b, uint64_t u, uint64_t v) {
      out.push_back({u, v, x != nullptr && x->contains(b)});
    });
    i = j + 1;
  }
}

// runs covering s on [lo, hi]: exact when the window is small, otherwise a
// per-block superset (bound_at stays a valid upper bound either way)
void append_explicit_runs(const IndexSet& x, const NatSet& s, uint64_t lo,
                          uint64_t hi, std::vector<InRun>& out) {
  if (lo < 1) lo = 1;
  if (lo > hi) return;
  if (hi - lo <= (uint64_t(1) << 16)) {
    std::vector<uint64_t> mem;
    for (uint64_t n = lo; n <= hi; ++n)
      if (s.contains(n)) mem.push_back(n);
    compress_into_runs(&x, mem, out);
    return;
  }
  for_block_pieces(lo, hi, [&](uint64_t b, uint64_t u, uint64_t v) {
    out.push_back({u, v, x.contains(b)});
  });
}

// members of s at or past `from`, structure-aware so sparse sets do not force
// long scans
std::vector<uint64_t> first_members_at_least(const NatSet& s, size_t count,
                                             uint64_t from) {
  std::vector<uint64_t> out;
  if (count == 0) return out;
  if (from < 1) from = 1;
  uint64_t settled = s.settled_after();
  for (uint64_t n = from; n <= settled && out.size() < count; ++n)
    if (s.contains(n)) out.push_back(n);
  if (out.size() == count || s.tail_is_empty()) return out;
  uint64_t a = std::max(from, settled + 1);
  if (s.tail_is_periodic()) {
    const auto& t = std::get<PeriodicTail>(s.tail());
    uint64_t cap = a + t.prefix.size() + (count + 2) * t.period.size();
    for (uint64_t n = a; n <= cap && out.size() < count; ++n)
      if (s.contains(n)) out.push_back(n);
    return out;
  }
  const auto& d = std::get<DyadicTail>(s.tail());
  uint64_t guard = d.index.prefix_len() + d.index.period_len() * (count + 2) + 66;
  for (uint64_t k = 1; k <= guard && out.size() < count; ++k) {
    if (!d.index.contains(k)) continue;
    int64_t plo = static_cast<int64_t>(block_lo(k)) - d.offset;
    int64_t phi_hi = static_cast<int64_t>(block_hi(k)) - d.offset;
    if (phi_hi < 1) continue;
    uint64_t u = plo < 1 ? 1 : static_cast<uint64_t>(plo);
    u = std::max(u, a);
    for (uint64_t n = u;
         n <= static_cast<uint64_t>(phi_hi) && out.size() < count; ++n)
      out.push_back(n);
  }
  return out;
}

InCertificate in_cert_finite(const Submeasure& phi, const NatSet& s) {
  InCertificate c;
  if (phi.kind() == Submeasure::Kind::ConstantWeight) {
    c.flat_members = s.members();
    c.flat_weight = phi.constant();
    return c;
  }
  if (s.tail_is_dyadic()) {
    // finite index: structural runs avoid enumerating huge blocks
    const auto& d = std::get<DyadicTail>(s.tail());
    uint64_t settled = s.settled_after();
    append_explicit_runs(phi.carrier(), s, 1, settled, c.runs);
    for (uint64_t k : d.index.members_up_to(d.index.prefix_len())) {
      int64_t plo = static_cast<int64_t>(block_lo(k)) - d.offset;
      int64_t phi_hi = static_cast<int64_t>(block_hi(k)) - d.offset;
      if (phi_hi < 1) continue;
      uint64_t u = plo < 1 ? 1 : static_cast<uint64_t>(plo);
      u = std::max(u, settled + 1);
      if (u > static_cast<uint64_t>(phi_hi)) continue;
      for_block_pieces(u, static_cast<uint64_t>(phi_hi),
                       [&](uint64_t b, uint64_t pu, uint64_t pv) {
                         c.runs.push_back({pu, pv, phi.carrier().contains(b)});
                       });
    }
    return c;
  }
  compress_into_runs(&phi.carrier(), s.members(), c.runs);
  return c;
}

// requires: periodic tail, cofinite carrier
InCertificate in_cert_periodic(const Submeasure& phi, const NatSet& s) {
  uint64_t K = phi.carrier().cofinite_start();
  uint64_t t0 = std::max(s.settled_after(), K >= 2 ? block_lo(K) - 1 : 0);
  t0 = std::max<uint64_t>(t0, 1);
  InCertificate c;
  append_explicit_runs(phi.carrier(), s, 1, t0, c.runs);
  c.geo_start = t0;
  return c;
}

// requires: dyadic tail with index \ carrier finite
InCertificate in_cert_dyadic(const Submeasure& phi, const NatSet& s) {
  const auto& d = std::get<DyadicTail>(s.tail());
  const IndexSet& x = phi.carrier();
  IndexSet wx = d.index.difference(x);
  uint64_t abso = abs_offset(d.offset);
  uint64_t t0 = std::max({s.settled_after(), 8 * abso, uint64_t(1)});
  InCertificate c;
  append_explicit_runs(x, s, 1, t0, c.runs);
  for (uint64_t k : wx.members_up_to(wx.prefix_len())) {
    int64_t plo = static_cast<int64_t>(block_lo(k)) - d.offset;
    int64_t phi_hi = static_cast<int64_t>(block_hi(k)) - d.offset;
    if (phi_hi < 1) continue;
    uint64_t u = plo < 1 ? 1 : static_cast<uint64_t>(plo);
    u = std::max(u, t0 + 1);
    if (u > static_cast<uint64_t>(phi_hi)) continue;
    for_block_pieces(u, static_cast<uint64_t>(phi_hi),
                     [&](uint64_t b, uint64_t pu, uint64_t pv) {
                       c.runs.push_back({pu, pv, x.contains(b)});
                     });
  }
  c.geo_start = t0;
  if (abso) {
    c.sliver_per = abso;
    c.sliver_from_block = block_of(t0 + 1);
  }
  return c;
}

uint64_t period_popcount(const PeriodicTail& t) {
  uint64_t m = 0;
  for (uint8_t b : t.period) m += (b != 0);
  return m;
}

}  // namespace

MembershipResult ideal_membership(const Submeasure& phi, const NatSet& s,
                                  size_t samples) {
  MembershipResult res;
  if (samples < 3) samples = 3;

  if (phi.kind() == Submeasure::Kind::ConstantWeight) {
    if (s.is_finite()) {
      res.verdict = Verdict::In;
      res.in_cert = in_cert_finite(phi, s);
    } else {
      res.verdict = Verdict::Out;
      OutCertificate oc;
      oc.d = phi.constant();
      oc.family = "the set is infinite, so every tail keeps members of weight " +
                  rational_str(phi.constant());
      for (uint64_t n :
           first_members_at_least(s, samples, s.settled_after() + 1))
        oc.samples.push_back({block_of(n), n, n, 1, phi.constant()});
      res.out_cert = std::move(oc);
    }
    return res;
  }

  const IndexSet& x = phi.carrier();

  if (s.is_finite()) {
    res.verdict = Verdict::In;
    res.in_cert = in_cert_finite(phi, s);
    return res;
  }

  if (s.tail_is_periodic()) {
    const auto& t = std::get<PeriodicTail>(s.tail());
    if (x.is_cofinite()) {
      res.verdict = Verdict::In;
      res.in_cert = in_cert_periodic(phi, s);
      return res;
    }
    res.verdict = Verdict::Out;
    uint64_t per = t.period.size();
    uint64_t m1 = period_popcount(t);
    OutCertificate oc;
    oc.d = make_rational(uint_to_mpz(m1), uint_to_mpz(4 * per));
    oc.family =
        "infinitely many dyadic blocks miss the carrier; each long enough one "
        "holds at least count/4 of its width in members of harmonic weight";
    uint64_t settled = s.settled_after();
    uint64_t k1 = 1;
    while (block_lo(k1) <= settled || block_lo(k1) < 2 * per) ++k1;
    for (uint64_t k : x.complement().first_members(samples, k1)) {
      uint64_t lo = block_lo(k), hi = block_hi(k);
      uint64_t cnt = 0;
      for (uint64_t rho = 0; rho < per; ++rho)
        if (t.period[rho])
          cnt += ap_count_in((t.prefix.size() + 1 + rho) % per, per, lo, hi);
      oc.samples.push_back(
          {k, lo, hi, cnt, make_rational(uint_to_mpz(cnt), uint_to_mpz(hi))});
    }
    res.out_cert = std::move(oc);
    return res;
  }

  const auto& d = std::get<DyadicTail>(s.tail());
  IndexSet wx = d.index.difference(x);
  if (wx.is_finite()) {
    res.verdict = Verdict::In;
    res.in_cert = in_cert_dyadic(phi, s);
    return res;
  }
  res.verdict = Verdict::Out;
  OutCertificate oc;
  oc.d = make_rational(1, 4);
  oc.family =
      "infinitely many whole blocks of the set miss the carrier and keep at "
      "least a quarter of their width in harmonic-weight members";
  uint64_t abso = abs_offset(d.offset);
  uint64_t settled = s.settled_after();
  uint64_t k1 = 2;
  while (block_lo(k1) < std::max<uint64_t>(2 * abso, 1) ||
         block_lo(k1) <= settled + abso)
    ++k1;
  for (uint64_t k : wx.first_members(samples, k1)) {
    uint64_t lo, hi;
    if (d.offset >= 0) {
      lo = block_lo(k);
      hi = block_hi(k) - static_cast<uint64_t>(d.offset);
    } else {
      lo = block_lo(k) + abso;
      hi = block_hi(k);
    }
    uint64_t cnt = hi - lo + 1;
    oc.samples.push_back(
        {k, lo, hi, cnt, make_rational(uint_to_mpz(cnt), uint_to_mpz(hi))});
  }
  res.out_cert = std::move(oc);
  return res;
}

MassValue Submeasure::total_mass(const NatSet& s, uint64_t depth) const {
  MassValue out;
  if (s.is_finite()) {
    auto mx = s.max_member();
    out.depth = mx ? *mx : 0;
    if (!s.tail_is_empty()) {
      // structured finite set (e.g. one whole dyadic block): the range
      // summation already handles it in closed form
      out.kind = MassKind::Exact;
      out.value = mx ? mass_range(s, 1, *mx) : Rational(0);
      out.upper = out.value;
      return out;
    }
    Rational exact(0);
    uint64_t clamped = 0;
    for (uint64_t n : s.members()) {
      if (kind_ == Kind::DyadicWeighted && carrier_.contains(block_of(n)) &&
          n > kExpCap) {
        ++clamped;
        continue;
      }
      exact += weight_at(n);
    }
    out.value = exact;
    if (clamped == 0) {
      out.kind = MassKind::Exact;
      out.upper = exact;
    } else {
      out.kind = MassKind::LowerBound;
      out.upper = exact + uint_to_mpq(clamped) * pow2(-static_cast<int64_t>(kExpCap));
    }
    return out;
  }
  uint64_t settled = s.settled_after();
  depth = std::max({depth, settled, uint64_t(64)});

  if (kind_ == Kind::ConstantWeight) {
    out.kind = MassKind::Infinite;
    out.value = partial_mass(s, depth);
    out.depth = depth;
    return out;
  }

  if (s.tail_is_periodic()) {
    const auto& t = std::get<PeriodicTail>(s.tail());
    if (!carrier_.is_cofinite()) {
      out.kind = MassKind::Infinite;
      out.value = partial_mass(s, depth);
      out.depth = depth;
      return out;
    }
    uint64_t K = carrier_.cofinite_start();
    uint64_t t0 = std::max(settled, K >= 2 ? block_lo(K) - 1 : 0);
    uint64_t pre = t.prefix.size(), per = t.period.size();
    if (t0 <= (uint64_t(1) << 22)) {
      Rational v = mass_range(s, 1, t0);
      Rational factor = make_rational(pow2_int(per), pow2_int(per) - 1);
      for (uint64_t rho = 0; rho < per; ++rho) {
        if (!t.period[rho]) continue;
        uint64_t f = ap_first_at_least((pre + 1 + rho) % per, per, t0 + 1);
        v += factor * pow2(-static_cast<int64_t>(f));
      }
      out.kind = MassKind::Exact;
      out.value = v;
      out.upper = v;
      out.depth = t0;
      return out;
    }
    out.kind = MassKind::LowerBound;
    out.value = partial_mass(s, depth);
    out.upper = out.value + in_cert_periodic(*this, s).bound_at(depth);
    out.depth = depth;
    return out;
  }

  const auto& d = std::get<DyadicTail>(s.tail());
  IndexSet wx = d.index.difference(carrier_);
  if (!wx.is_finite()) {
    out.kind = MassKind::Infinite;
    out.value = partial_mass(s, depth);
    out.depth = depth;
    return out;
  }
  depth = std::max(depth, 8 * abs_offset(d.offset));
  out.kind = MassKind::LowerBound;
  out.value = partial_mass(s, depth);
  out.upper = out.value + in_cert_dyadic(*this, s).bound_at(depth);
  out.depth = depth;
  return out;
}

uint64_t tall_threshold(const Submeasure& phi, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("tall threshold needs eps > 0");
  if (phi.kind() == Submeasure::Kind::ConstantWeight)
    throw std::invalid_argument(
        "constant-weight family is not tall: singleton masses do not vanish");
  Integer m = floor_int(Rational(1) / eps);
  if (!m.fits_ulong_p())
    throw std::invalid_argument("tall threshold overflows for this eps");
  return m.get_ui() + 1;
}

Rational union_modulus(const Submeasure& phi, const Rational& eps) {
  (void)phi;  // subadditivity holds for every supported family
  if (eps <= 0) throw std::invalid_argument("union modulus needs eps > 0");
  return eps / 2;
}

Rational shift_modulus(const Submeasure& phi, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("shift modulus needs eps > 0");
  if (phi.kind() == Submeasure::Kind::ConstantWeight) return eps;
  // delta = 2^-j: a boundary member crossing a block edge can trade its
  // geometric weight for a harmonic one; mass under delta forces the crossing
  // depth, and the candidate loss per direction is summed over all deeper
  // boundaries.  Scan the least j making both directions fall under eps.
  for (uint64_t j = 1;; ++j) {
    uint64_t ku = 1;
    while ((uint64_t(1) << ku) - 1 <= j) ++ku;  // min k with 2^k - 1 > j
    uint64_t kd = 2;
    while ((uint64_t(1) << (kd - 1)) <= j) ++kd;  // min k >= 2 with 2^(k-1) > j
    Rational up = pow2(-static_cast<int64_t>(j)) + pow2(1 - static_cast<int64_t>(ku));
    Rational down =
        pow2(1 - static_cast<int64_t>(j)) + pow2(3 - static_cast<int64_t>(kd));
    if (up <= eps && down <= eps) return pow2(-static_cast<int64_t>(j));
    if (j > (uint64_t(1) << 20))
      throw std::logic_error("shift modulus scan ran away");
  }
}

InclusionResult ideal_inclusion(const Submeasure& a, const Submeasure& b) {
  InclusionResult r;
  if (a.kind() == Submeasure::Kind::ConstantWeight) {
    r.verdict = Verdict::In;
    r.note = "the first ideal is the finite sets, contained in every exhaustive ideal";
    return r;
  }
  if (b.kind() == Submeasure::Kind::ConstantWeight) {
    r.verdict = Verdict::Out;
    if (!a.carrier().is_finite()) {
      NatSet w = NatSet::dyadic_union(a.carrier(), 0);
      r.witness = w;
      r.witness_in = ideal_membership(a, w).in_cert;
      r.witness_out = ideal_membership(b, w).out_cert;
      r.note = "the union of the carrier blocks is an infinite member of the first ideal";
    } else {
      r.note =
          "the first ideal holds infinite sets of summable weight (one member "
          "per block, say), never finite; no such witness is representable here";
    }
    return r;
  }
  IndexSet gap = a.carrier().difference(b.carrier());
  if (gap.is_finite()) {
    r.verdict = Verdict::In;
    r.note = "all but finitely many carrier blocks of the first family are carried by the second";
    return r;
  }
  r.verdict = Verdict::Out;
  NatSet w = NatSet::dyadic_union(gap, 0);
  r.witness = w;
  r.witness_in = ideal_membership(a, w).in_cert;
  r.witness_out = ideal_membership(b, w).out_cert;
  r.note = "infinitely many carrier blocks of the first family escape the second";
  return r;
}

}  // namespace cantor
