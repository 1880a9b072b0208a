#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/index_set.hpp"
#include "cantor/nat_set.hpp"
#include "cantor/rational.hpp"

namespace cantor {

// sum_{t=0}^{count-1} 1/(first + t*step), exact.  Divide-and-conquer keeps
// intermediate denominators near the lcm instead of the full product.
Rational harmonic_ap_sum(uint64_t first, uint64_t step, uint64_t count);

// sum_{n=lo}^{hi} 1/n, exact.
Rational harmonic_range_sum(uint64_t lo, uint64_t hi);

// sum_{t=0}^{count-1} 2^-(first + t*step), exact closed form.
Rational geometric_ap_sum(uint64_t first, uint64_t step, uint64_t count);

// sum_{n=lo}^{hi} 2^-n = 2^-(lo-1) - 2^-hi, exact closed form.
Rational geometric_range_sum(uint64_t lo, uint64_t hi);

enum class Verdict { In, Out, Unknown };

std::string verdict_str(Verdict v);

// Run of consecutive members [lo, hi] whose weights share one shape:
// geometric (<= 2^-n) when carried, harmonic (<= 1/n) otherwise.
struct InRun {
  uint64_t lo = 0;
  uint64_t hi = 0;
  bool carried = false;
};

// Schedule certifying that the tail masses of a set die out: bound_at(N) is
// an exact upper bound for the mass of the set beyond N, nonincreasing in N
// with limit 0.
struct InCertificate {
  // disjoint sorted runs covering the irregular part of the set
  std::vector<InRun> runs;
  // if nonzero, every member past every run is carried, so the residual mass
  // beyond N >= geo_start (runs aside) is at most 2^-N
  uint64_t geo_start = 0;
  // if sliver_per > 0, each dyadic block b >= sliver_from_block holds at most
  // sliver_per stray members of weight at most 2^(3-b)
  uint64_t sliver_per = 0;
  uint64_t sliver_from_block = 0;
  // constant-weight families: explicit member list with one shared weight
  std::vector<uint64_t> flat_members;
  Rational flat_weight;

  Rational bound_at(uint64_t n) const;
  // least N of the form tried by doubling+bisection with bound_at(N) < eps
  uint64_t threshold_for(const Rational& eps) const;
};

// One concrete interval showing tail mass that does not die out.
struct OutSample {
  uint64_t block = 0;   // dyadic block index when applicable, else 0
  uint64_t lo = 0;      // position range examined
  uint64_t hi = 0;
  uint64_t count = 0;   // exact number of members in [lo, hi]
  Rational mass_lower;  // certified lower bound on the mass in [lo, hi]
};

// Witness that tail mass never falls below d: an infinite family description
// plus concrete samples from it, each arbitrarily far out.
struct OutCertificate {
  Rational d;
  std::string family;
  std::vector<OutSample> samples;
};

struct MembershipResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<InCertificate> in_cert;
  std::optional<OutCertificate> out_cert;
};

enum class MassKind { Exact, LowerBound, Infinite };

std::string mass_kind_str(MassKind k);

// Total mass report for possibly infinite sets.  Exact: value is the total.
// LowerBound: value is a partial sum to `depth`; `upper` when present is a
// certified upper bound on the total.  Infinite: the total diverges and
// value is the partial sum to `depth`.
struct MassValue {
  MassKind kind = MassKind::Exact;
  Rational value;
  std::optional<Rational> upper;
  uint64_t depth = 0;
};

// Lower semicontinuous submeasure on subsets of the positive integers.
//
// DyadicWeighted(x): weight 2^-n on positions whose dyadic block lies in the
// index set x, harmonic weight 1/n elsewhere.  Its exhaustive ideal holds
// exactly the sets that eventually live (up to bounded-per-block slivers)
// inside the carrier blocks.
//
// ConstantWeight(w): weight w > 0 everywhere; exhaustive ideal = finite sets.
class Submeasure {
 public:
  enum class Kind { DyadicWeighted, ConstantWeight };

  static Submeasure dyadic_weighted(IndexSet carrier);
  static Submeasure constant_weight(const Rational& w);

  Kind kind() const { return kind_; }
  const IndexSet& carrier() const;   // DyadicWeighted only
  const Rational& constant() const;  // ConstantWeight only
  std::string describe() const;

  Rational weight_at(uint64_t n) const;
  bool carried(uint64_t n) const;  // the weight at n is the geometric one

  // exact mass of s intersected with [lo, hi]; closed forms per block piece,
  // so whole dyadic blocks cost polylog not linear work
  Rational mass_range(const NatSet& s, uint64_t lo, uint64_t hi) const;
  // exact mass of s intersected with [1, n]
  Rational partial_mass(const NatSet& s, uint64_t n) const;
  // exact mass of a finite set; throws std::invalid_argument otherwise
  Rational mass(const NatSet& s) const;
  // total mass classification; `depth` bounds the enumerated prefix
  MassValue total_mass(const NatSet& s, uint64_t depth = 4096) const;

  bool operator==(const Submeasure& o) const;

 private:
  Submeasure(Kind k, IndexSet c, Rational w)
      : kind_(k), carrier_(std::move(c)), weight_(std::move(w)) {}

  Kind kind_;
  IndexSet carrier_;
  Rational weight_;
};

// Decides membership of s in the exhaustive ideal of phi, with a certificate
// either way; `samples` sets how many concrete witnesses an Out ships with.
// Total for every representable set.
MembershipResult ideal_membership(const Submeasure& phi, const NatSet& s,
                                  size_t samples = 3);

// Smallest threshold, uniform over carriers of the family, such that every
// singleton {n} with n at or past it has mass below eps.  Throws
// std::invalid_argument for families whose singleton masses do not vanish
// (constant weight).
uint64_t tall_threshold(const Submeasure& phi, const Rational& eps);

// delta such that mass(s) < delta and mass(t) < delta force
// mass(union(s, t)) < eps.  Monotone in eps.
Rational union_modulus(const Submeasure& phi, const Rational& eps);

// delta such that mass(s) < delta forces the masses of both unit shifts of s
// to stay below eps.  Monotone in eps.
Rational shift_modulus(const Submeasure& phi, const Rational& eps);

struct InclusionResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<NatSet> witness;  // for Out: in the first ideal, not the second
  std::optional<InCertificate> witness_in;    // witness belongs to the first ideal
  std::optional<OutCertificate> witness_out;  // witness escapes the second ideal
  std::string note;
};

// Decides whether the exhaustive ideal of `a` is contained in that of `b`.
InclusionResult ideal_inclusion(const Submeasure& a, const Submeasure& b);

}  // namespace cantor
