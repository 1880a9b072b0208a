#include "cantor/factor.hpp"

#include <numeric>
#include <stdexcept>

namespace cantor {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Brent-cycle Pollard rho; returns a nontrivial factor of an odd composite.
uint64_t pollard_rho(uint64_t n) {
  if (n % 2 == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    auto step = [&](uint64_t x) {
      return (mulmod(x, x, n) + c) % n;
    };
    uint64_t x = 2, y = 2, d = 1;
    uint64_t q = 1;
    int64_t lam = 1;
    while (d == 1) {
      x = y;
      for (int64_t i = 0; i < lam; ++i) y = step(y);
      int64_t k = 0;
      while (k < lam && d == 1) {
        uint64_t ys = y;
        int64_t lim = std::min<int64_t>(128, lam - k);
        for (int64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        if (d == n) {
          // backtrack one step at a time
          d = 1;
          y = ys;
          do {
            y = step(y);
            d = std::gcd(x > y ? x - y : y - x, n);
          } while (d == 1);
          break;
        }
        k += lim;
      }
      lam *= 2;
    }
    if (d != n) return d;
  }
}

void factor_rec(uint64_t n, std::map<uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic witness set for all 64-bit integers
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::map<uint64_t, unsigned> factorize_u64(uint64_t n) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  std::map<uint64_t, unsigned> out;
  // strip small primes first so rho only sees hard cofactors
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  factor_rec(n, out);
  return out;
}

std::vector<uint64_t> distinct_prime_factors_u64(uint64_t n) {
  std::vector<uint64_t> out;
  for (const auto& [p, e] : factorize_u64(n)) out.push_back(p);
  return out;
}

}  // namespace cantor
