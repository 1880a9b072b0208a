#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace cantor {

// Deterministic primality test for the full 64-bit range.
bool is_prime_u64(uint64_t n);

// Prime factorization of n >= 1 as {prime -> multiplicity}, sorted by prime.
std::map<uint64_t, unsigned> factorize_u64(uint64_t n);

// Distinct prime divisors of n >= 1, sorted ascending.
std::vector<uint64_t> distinct_prime_factors_u64(uint64_t n);

}  // namespace cantor
