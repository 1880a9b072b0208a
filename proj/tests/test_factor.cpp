#include <stdexcept>

#include "doctest.h"

#include "cantor/factor.hpp"
#include "cantor/rng.hpp"

using namespace cantor;

namespace {

// trial-division oracle
bool slow_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("64-bit primality matches trial division") {
  for (uint64_t n = 0; n <= 3000; ++n) CHECK(is_prime_u64(n) == slow_prime(n));
  // strong-pseudoprime classics
  CHECK(!is_prime_u64(341));
  CHECK(!is_prime_u64(561));
  CHECK(!is_prime_u64(3215031751ULL));
  CHECK(is_prime_u64((uint64_t(1) << 61) - 1));
  CHECK(!is_prime_u64((uint64_t(1) << 63) - 1));
  CHECK(is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
}

TEST_CASE("factorization reconstructs and yields primes") {
  Rng rng(42);
  for (int t = 0; t < 400; ++t) {
    uint64_t n = rng.between(1, uint64_t(1) << 40);
    auto f = factorize_u64(n);
    uint64_t prod = 1;
    for (auto [p, e] : f) {
      CHECK(is_prime_u64(p));
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
  // a hard semiprime: two 31-bit primes
  uint64_t a = 2147483647ULL, b = 2147483629ULL;
  auto f = factorize_u64(a * b);
  REQUIRE(f.size() == 2);
  CHECK(f.begin()->first == b);
  CHECK(f.rbegin()->first == a);
  CHECK(factorize_u64(1).empty());
  CHECK_THROWS_AS(factorize_u64(0), std::invalid_argument);
  CHECK(distinct_prime_factors_u64(360) == std::vector<uint64_t>{2, 3, 5});
}
