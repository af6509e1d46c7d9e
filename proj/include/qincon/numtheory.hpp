#pragma once

#include <cstdint>
#include <vector>

namespace qincon::nt {

// Deterministic Miller-Rabin, valid for every 64-bit n.
bool is_prime(std::uint64_t n);

// Full Kronecker symbol (a|n), defined for every pair of integers.
// (a|0) = [a = +-1], (a|-1) = sign(a), (a|2) per the mod-8 rule; for odd
// prime n this is the Legendre symbol.
int kronecker(long long a, long long n);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Inverse of a mod ell, ell prime, a != 0 (mod ell).
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t ell);

// Distinct prime factors by trial division (n > 0, desk-scale).
std::vector<long long> prime_factors(long long n);

// Product of the distinct primes dividing n (rad(1) = 1).
long long radical(long long n);

std::vector<long long> primes_below(long long bound);

long long isqrt(long long n);

} // namespace qincon::nt
