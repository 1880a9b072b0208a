#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/base_seq.hpp"
#include "cantor/mixed_radix.hpp"
#include "cantor/submeasure.hpp"

namespace cantor {

// rho(r, s) = phi(change set of |r - s|) + |r - s|, reported in parts.
// The submeasure part inherits the mass classification: Exact when the
// change set's tail was classified, LowerBound when only the inspected
// prefix is known (the true value can only be larger), Infinite when the
// change-set mass provably diverges.
struct RhoValue {
  Rational distance;   // exact |r - s|
  MassValue phi;       // mass report for the change set of |r - s|
  uint64_t depth = 0;  // digit prefix depth used

  // certified lower bound on rho; equals rho when the phi part is exact
  Rational lower() const { return distance + phi.value; }
  // engaged only when the phi part is exact
  std::optional<Rational> exact() const;
  // certified upper bound, when one is available
  std::optional<Rational> upper() const;
};

// Both sides must use the same base; `depth` bounds the inspected digit
// prefix when the change set's tail cannot be classified.
RhoValue rho(const Submeasure& phi, const SignedReal& r, const SignedReal& s,
             uint64_t depth = 128);

// Membership of r in the metric carrier: the change set of |r| lies in the
// exhaustive ideal of phi.  The sign is immaterial.
MembershipResult carrier_membership(const Submeasure& phi, const SignedReal& r,
                                    uint64_t depth = 128, size_t samples = 3);

// Certified weak-triangle modulus: a delta > 0 such that for all r, s, t over
// the given base, rho(r,s) < delta and rho(s,t) < delta force rho(r,t) < eps.
// Monotone in eps.  Throws std::invalid_argument when the base's change set
// (or its unit down-shift) escapes the exhaustive ideal, since then no
// uniform modulus is certifiable.
Rational rho_triangle_modulus(const Submeasure& phi, const BaseSeq& b,
                              const Rational& eps);

struct TruncationStep {
  uint64_t n = 0;
  RhoValue value;  // certified rho(r, [r]_n), recomputed exactly
};

// Certificate that the digit truncations of r approach r: n0 is the first
// certified index, and `steps` lists an increasing index subsequence (three
// entries; members of the change set when it is infinite, otherwise indices
// past every change with vanishing singleton weight) whose rho values all
// fall below the requested eps.
struct TruncationResult {
  uint64_t n0 = 0;
  std::vector<TruncationStep> steps;
};

// Requires a certified In verdict from carrier_membership; throws
// std::domain_error otherwise, and std::invalid_argument when no index can
// be certified within the probe budget (possible only for submeasures whose
// singleton masses do not vanish).
TruncationResult truncation_convergence(const Submeasure& phi,
                                        const SignedReal& r,
                                        const Rational& eps,
                                        uint64_t depth = 128);

}  // namespace cantor
