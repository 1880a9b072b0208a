#pragma once

#include <cstdint>
#include <vector>

#include "cantor/base_seq.hpp"
#include "cantor/index_set.hpp"
#include "cantor/mixed_radix.hpp"
#include "cantor/submeasure.hpp"

namespace cantor {

// A number y = c * v with v in the module carrier such that
//   (i)   the change set of y covers the whole dyadic block B_k,
//   (ii)  the first 2^(k-1) digits of y vanish, so y < 1/(a_1...a_{2^(k-1)}),
//   (iii) the digit of y at position 2^k + 2 is nonzero.
// Built from the alternating one-digit pattern on B_k (ones at
// 2^(k-1)+1, 2^(k-1)+3, ..., 2^k-1, plus a one at 2^k+2), divided by c,
// truncated, and nudged up by one unit in the last kept place so that
// multiplying back by c pins the required digits.  Requires k >= 2, c >= 1,
// and c representable over the base's prime support.
MixedRadixReal spike_witness(const BaseSeq& b, uint64_t k, const Rational& c);

// Digit surgery flattening the mid-range of v: keep digits at positions
// <= (2^k - 1) + k0 + 2 (k0 minimal with 2^k0 > c) and > N, zero the middle,
// with N chosen from v's In certificate so the kept far tail has mass below
// eps/3 and then doubled until the produced w certifies phi(j(w)) < eps
// exactly.  Guarantees 0 <= w <= v < w + 1/(c * a_1...a_{2^k+1}).
// Requires 0 <= v < 1/(a_1...a_{2^(k-1)}) and an In verdict for v's change
// set; throws std::invalid_argument when the certificate is missing or no N
// reaches the requested eps.
MixedRadixReal flatten(const MixedRadixReal& v, uint64_t k, const Rational& c,
                       const Rational& eps, const Submeasure& phi);

struct SeparationWitness {
  uint64_t k = 0;      // dyadic block carrying the witness
  DigitSpec spec;      // digits of w (all information needed to recompute)
  Rational value;      // w, exact
  Rational bound;      // 1/(a_1...a_{2^(k-1)}); w < bound by construction
  Rational phi_first;  // mass of w's change set under the first submeasure
  Rational psi_second; // mass of (c*w)'s change set under the second
};

// Witness list showing that scaling by c maps points arbitrarily close to 0
// in the first submeasure topology to points at distance >= threshold in the
// second: value and phi_first shrink to 0 along the list while psi_second
// stays at or above threshold = 1/2.
struct SeparationCertificate {
  Rational scalar;
  Rational threshold;
  std::vector<SeparationWitness> witnesses;
};

// Builds `count` witnesses over the smallest blocks k >= 3 of x \ y.
// Preconditions (violations throw std::domain_error): the weighted ideal of
// x is not included in that of y (equivalently x \ y is infinite); c >= 1;
// c representable over the base's prime support; the base's change set
// belongs to both ideals.
SeparationCertificate separation_certificate(const IndexSet& x,
                                             const IndexSet& y,
                                             const Rational& c, uint64_t count,
                                             const BaseSeq& b);

}  // namespace cantor
