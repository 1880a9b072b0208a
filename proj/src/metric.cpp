#include "cantor/metric.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

namespace {

// next member of s at or past n; s must be infinite
uint64_t next_member(const NatSet& s, uint64_t n) {
  if (n == 0) n = 1;
  for (uint64_t k = n, lim = n + (uint64_t(1) << 21); k <= lim; ++k)
    if (s.contains(k)) return k;
  throw std::logic_error("no change-set member found in a huge window");
}

}  // namespace

std::optional<Rational> RhoValue::exact() const {
  if (phi.kind != MassKind::Exact) return std::nullopt;
  return distance + phi.value;
}

std::optional<Rational> RhoValue::upper() const {
  if (phi.kind == MassKind::Infinite || !phi.upper) return std::nullopt;
  return distance + *phi.upper;
}

RhoValue rho(const Submeasure& phi, const SignedReal& r, const SignedReal& s,
             uint64_t depth) {
  MixedRadixReal d = absdiff(r, s);
  RhoValue out;
  out.distance = d.value();
  out.depth = depth;
  JumpResult j = d.jump(depth);
  if (j.full) {
    out.phi = phi.total_mass(*j.full, depth);
    return out;
  }
  // unclassified tail: the inspected prefix gives a certified lower bound
  // (lower semicontinuity), and nothing bounds the rest from above
  out.phi = phi.total_mass(NatSet::finite(j.prefix));
  out.phi.kind = MassKind::LowerBound;
  out.phi.upper = std::nullopt;
  out.phi.depth = depth;
  return out;
}

MembershipResult carrier_membership(const Submeasure& phi, const SignedReal& r,
                                    uint64_t depth, size_t samples) {
  JumpResult j = r.magnitude().jump(depth);
  if (!j.full) return MembershipResult{};
  return ideal_membership(phi, *j.full, samples);
}

Rational rho_triangle_modulus(const Submeasure& phi, const BaseSeq& b,
                              const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  // The change set of |r - t| lies inside the union of: the change sets of
  // |r - s| and |s - t|, their unit down-shifts, and the base's own change
  // set with its unit down-shift.  Give each group, plus the plain distance
  // term, a quarter of eps.
  Rational q = eps / 4;
  Rational du = union_modulus(phi, q);
  Rational ds = shift_modulus(phi, union_modulus(phi, q));

  NatSet jb = b.jump_set();
  NatSet t = jb.unite(jb.shift_down());
  MembershipResult m = ideal_membership(phi, t);
  if (m.verdict != Verdict::In)
    throw std::invalid_argument(
        "the base's change set escapes the exhaustive ideal; no uniform "
        "triangle modulus exists");
  uint64_t N = m.in_cert->threshold_for(q);

  // distances below gamma have their first N+2 digits zero, so the combined
  // change set is disjoint from [1, N] and only the bounded tail survives
  Rational gamma = make_rational(1, b.product_upto(N + 2));

  return std::min(std::min(du, ds), std::min(gamma, Rational(eps / 8)));
}

TruncationResult truncation_convergence(const Submeasure& phi,
                                        const SignedReal& r,
                                        const Rational& eps, uint64_t depth) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  MembershipResult m = carrier_membership(phi, r, depth);
  if (m.verdict != Verdict::In)
    throw std::domain_error(
        "truncation convergence requires a certified In verdict for the "
        "carrier");

  const MixedRadixReal& mag = r.magnitude();
  const BaseSeq& b = mag.base();
  int sgn = r.sign();
  auto rho_at = [&](uint64_t n) {
    Rational tv = mag.truncate(n);
    if (sgn < 0) tv = -tv;
    return rho(phi, r, SignedReal(b, tv), depth);
  };

  TruncationResult out;
  if (mag.expansion_terminates()) {
    uint64_t n0 = mag.last_nonzero_digit();
    out.n0 = n0;
    out.steps.push_back({n0, rho_at(n0)});
    return out;
  }

  NatSet jf = *mag.jump(depth).full;  // In verdict implies presence
  const InCertificate& cert = *m.in_cert;
  bool infinite = !jf.is_finite();
  uint64_t maxj = 0;
  if (!infinite) {
    auto mm = jf.max_member();
    maxj = mm ? *mm : 0;
  }

  auto certified_below = [&](const RhoValue& v) {
    if (v.phi.kind == MassKind::Exact) return *v.exact() < eps;
    auto up = v.upper();
    return up && *up < eps;
  };

  constexpr uint64_t kMaxProbe = 512;
  Rational target = eps;
  uint64_t prev = 0;
  while (out.steps.size() < 3) {
    uint64_t cand;
    if (infinite) {
      // stepping inside the change set keeps the truncation's change set a
      // plain tail of it, controlled by the In certificate
      uint64_t tail_ok = cert.threshold_for(target / 2);
      cand = next_member(jf, std::max(tail_ok + 1, prev + 1));
    } else {
      // past every change the truncation's change set is one singleton,
      // handled by the vanishing-singleton threshold when there is one
      uint64_t tall = prev;
      try {
        tall = tall_threshold(phi, target);
      } catch (const std::invalid_argument&) {
      }
      cand = std::max({tall, maxj, prev + 1, uint64_t(1)});
    }
    for (uint64_t probes = 0;; ++probes) {
      if (probes > kMaxProbe)
        throw std::invalid_argument(
            "no truncation index certifies below eps within the probe budget");
      RhoValue v = rho_at(cand);
      if (certified_below(v)) {
        out.steps.push_back({cand, v});
        prev = cand;
        break;
      }
      cand = infinite ? next_member(jf, cand + 1) : cand + 1;
    }
    target /= 2;
  }
  out.n0 = out.steps.front().n;
  return out;
}

}  // namespace cantor
