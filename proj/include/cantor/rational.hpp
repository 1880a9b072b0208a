#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cantor {

using Integer = mpz_class;
using Rational = mpq_class;

// den != 0; result canonical (lowest terms, den > 0).
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q"; rejects anything else.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    bool ok = (ch >= '0' && ch <= '9') || (ch == '-' && i == 0) || ch == '/';
    if (!ok) throw std::invalid_argument("bad rational literal: " + text);
  }
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

// Lowest terms; integers print without "/1".
inline std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer floor_int(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

inline Rational frac_part(const Rational& q) {  // q - floor(q), in [0, 1)
  return q - Rational(floor_int(q));
}

inline Integer int_pow(const Integer& base, uint64_t e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

inline Integer pow2_int(uint64_t e) {
  Integer out = 1;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return out;
}

// 2^e for signed e.
inline Rational pow2(int64_t e) {
  if (e >= 0) return Rational(pow2_int(static_cast<uint64_t>(e)));
  return make_rational(1, pow2_int(static_cast<uint64_t>(-e)));
}

}  // namespace cantor
