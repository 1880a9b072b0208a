#include "cantor/separation.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace cantor {

namespace {

// Positions 2^(k-1)+1, then every `gap`, up to 2^k - 1, all with digit 1.
// For gap = 2 the change set is exactly the dyadic block B_k: each one-digit
// at p contributes changes at p-1 and p, and the union over the alternating
// positions fills [2^(k-1), 2^k - 1] with nothing outside it.
DigitSpec spike_spec(uint64_t k, uint64_t gap) {
  DigitSpec s;
  const uint64_t lo = (uint64_t(1) << (k - 1)) + 1;
  const uint64_t hi = (uint64_t(1) << k) - 1;
  for (uint64_t p = lo; p <= hi; p += gap) s.digits[p] = 1;
  return s;
}

NatSet full_jump(const MixedRadixReal& r) {
  JumpResult j = r.jump(1);
  if (!j.full)
    throw std::logic_error(
        "change set of a finite-digit number failed to materialize");
  return *j.full;
}

void check_scalar(const BaseSeq& b, const Rational& c) {
  if (c < 1) throw std::domain_error("scalar must be at least 1");
  if (!b.q_a_member(c))
    throw std::domain_error(
        "scalar denominator uses primes outside the base's support");
}

SeparationWitness build_witness(const BaseSeq& b, const Submeasure& phi,
                                const Submeasure& psi, const Rational& c,
                                uint64_t k) {
  const uint64_t half = uint64_t(1) << (k - 1);
  const Rational bound = make_rational(1, b.product_upto(half));
  // the family's tallness bound for whole-block change sets: 2^(1 - 2^(k-1))
  const Rational cap = make_rational(2, pow2_int(half));
  const Rational d = make_rational(1, 2);

  // Candidate ladder: the densest spike keeps the change set inside B_k and
  // (after scaling by c) covers enough of B_k to hold mass >= 1/2; sparser
  // spikes are fallbacks for scalars whose digit spread would otherwise
  // make neighbouring expansions interact.  Every candidate is verified
  // exactly; the first to pass is the witness.
  for (uint64_t gap : std::array<uint64_t, 4>{2, 4, 8, 16}) {
    DigitSpec spec = spike_spec(k, gap);
    MixedRadixReal w = from_digit_spec(spec, b);
    if (!(w.value() > 0 && w.value() < bound)) continue;
    Rational pm = phi.mass(full_jump(w));
    if (!(pm <= cap)) continue;
    MixedRadixReal cw(b, Rational(c * w.value()));
    Rational qm = psi.mass(full_jump(cw));
    if (!(qm >= d)) continue;
    SeparationWitness out;
    out.k = k;
    out.spec = std::move(spec);
    out.value = w.value();
    out.bound = bound;
    out.phi_first = std::move(pm);
    out.psi_second = std::move(qm);
    return out;
  }
  throw std::domain_error("no certified witness at block " + std::to_string(k));
}

}  // namespace

MixedRadixReal spike_witness(const BaseSeq& b, uint64_t k, const Rational& c) {
  if (k < 2) throw std::domain_error("spike witness needs a block index k >= 2");
  if (k > 24) throw std::domain_error("spike block too large to materialize");
  check_scalar(b, c);

  DigitSpec zs = spike_spec(k, 2);
  const uint64_t m0 = (uint64_t(1) << k) + 2;
  zs.digits[m0] = 1;
  MixedRadixReal z = from_digit_spec(zs, b);

  MixedRadixReal quot(b, Rational(z.value() / c));
  if (quot.expansion_terminates()) return z;  // z/c already has finite digits

  // Least N past the pattern with a_{m0+1} ... a_N > c; then rounding z/c up
  // to the next multiple of 1/(a_1...a_N) moves c * v' above z by less than
  // 1/(a_1...a_{m0}), so the digits of y through m0 are exactly those of z.
  uint64_t n = m0;
  Integer prod = 1;
  while (!(Rational(prod) > c)) {
    ++n;
    prod *= b.value_at(n);
  }
  for (int attempt = 0; attempt < 4; ++attempt, ++n) {
    Rational vp =
        Rational(quot.truncate(n) + make_rational(1, b.product_upto(n)));
    MixedRadixReal y(b, Rational(c * vp));
    bool ok = y.value() < make_rational(1, b.product_upto(uint64_t(1) << (k - 1)));
    for (auto it = zs.digits.begin(); ok && it != zs.digits.end(); ++it)
      ok = y.digit(it->first) == it->second;
    if (ok) return y;
  }
  throw std::logic_error("spike approximation kept disturbing its own digits");
}

MixedRadixReal flatten(const MixedRadixReal& v, uint64_t k, const Rational& c,
                       const Rational& eps, const Submeasure& phi) {
  if (k < 2) throw std::domain_error("flatten needs a block index k >= 2");
  if (k > 24) throw std::domain_error("flatten block too large to materialize");
  check_scalar(v.base(), c);
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const BaseSeq& b = v.base();
  const uint64_t half = uint64_t(1) << (k - 1);
  if (!(v.value() >= 0 &&
        v.value() < make_rational(1, b.product_upto(half))))
    throw std::domain_error("flatten input must lie in [0, 1/(a_1...a_{2^(k-1)}))");

  uint64_t k0 = 0;
  while (!(Rational(pow2_int(k0)) > c)) ++k0;
  const uint64_t keep = ((uint64_t(1) << k) - 1) + k0 + 2;

  MembershipResult mem;
  {
    JumpResult j = v.jump(keep);
    if (j.full) mem = ideal_membership(phi, *j.full);
  }
  if (mem.verdict != Verdict::In || !mem.in_cert)
    throw std::invalid_argument(
        "flatten requires an In certificate for the input's change set");

  uint64_t n = std::max(keep + 1, mem.in_cert->threshold_for(Rational(eps / 3)));
  for (int attempt = 0; attempt < 8; ++attempt, n *= 2) {
    // keep digits <= keep and > n, zero the middle
    Rational w_val = Rational(v.value() - (v.truncate(n) - v.truncate(keep)));
    MixedRadixReal w(b, w_val);
    JumpResult jw = w.jump(keep + 1);
    if (!jw.full) continue;
    MassValue mv = phi.total_mass(*jw.full);
    bool ok = (mv.kind == MassKind::Exact && mv.value < eps) ||
              (mv.kind == MassKind::LowerBound && mv.upper && *mv.upper < eps);
    if (ok) return w;
  }
  throw std::invalid_argument(
      "no cut point brings the flattened change set below eps");
}

SeparationCertificate separation_certificate(const IndexSet& x,
                                             const IndexSet& y,
                                             const Rational& c, uint64_t count,
                                             const BaseSeq& b) {
  check_scalar(b, c);
  Submeasure phi = Submeasure::dyadic_weighted(x);
  Submeasure psi = Submeasure::dyadic_weighted(y);
  if (is_adapted(b, phi).verdict != Verdict::In ||
      is_adapted(b, psi).verdict != Verdict::In)
    throw std::domain_error("base change set must belong to both ideals");
  InclusionResult inc = ideal_inclusion(phi, psi);
  if (inc.verdict != Verdict::Out)
    throw std::domain_error(
        "first ideal lies inside the second; nothing to separate");

  std::vector<uint64_t> blocks = x.difference(y).first_members(count, 3);
  if (!blocks.empty() && blocks.back() > 24)
    throw std::domain_error("witness blocks grow past the materializable range");

  SeparationCertificate cert;
  cert.scalar = c;
  cert.threshold = make_rational(1, 2);
  cert.witnesses.reserve(blocks.size());
  for (uint64_t k : blocks)
    cert.witnesses.push_back(build_witness(b, phi, psi, c, k));
  for (size_t i = 1; i < cert.witnesses.size(); ++i)
    if (!(cert.witnesses[i].phi_first < cert.witnesses[i - 1].phi_first))
      throw std::logic_error("witness masses failed to decrease strictly");
  return cert;
}

}  // namespace cantor
