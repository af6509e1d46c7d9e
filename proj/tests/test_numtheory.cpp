#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "qincon/numtheory.hpp"

#include "oracles.hpp"

using namespace qincon;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("is_prime agrees with trial division below 10000") {
    for (std::uint64_t n = 0; n < 10000; ++n) CHECK(nt::is_prime(n) == trial_division_prime(n));
}

TEST_CASE("is_prime handles Carmichael numbers and large inputs") {
    for (std::uint64_t carmichael : {561u, 1105u, 1729u, 2465u, 2821u, 6601u, 8911u})
        CHECK_FALSE(nt::is_prime(carmichael));
    CHECK(nt::is_prime(2147483647ULL));          // 2^31 - 1
    CHECK_FALSE(nt::is_prime(2147483647ULL * 3));
    CHECK(nt::is_prime(1000000007ULL));
    CHECK(nt::is_prime(0xFFFFFFFBULL)); // 4294967291, largest 32-bit prime
}

TEST_CASE("kronecker matches Euler's criterion for odd primes") {
    for (long long p : {3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL, 29LL, 31LL, 97LL}) {
        for (long long a = -60; a <= 60; ++a)
            CHECK(nt::kronecker(a, p) == oracles::legendre_euler(a, p));
    }
}

TEST_CASE("kronecker multiplicativity and edge cases") {
    CHECK(nt::kronecker(3, 1) == 1);
    CHECK(nt::kronecker(-7, 1) == 1);
    CHECK(nt::kronecker(0, 5) == 0);
    CHECK(nt::kronecker(10, 5) == 0);
    // multiplicative in the top argument
    for (long long n : {5LL, 7LL, 15LL, 21LL}) {
        for (long long a = -12; a <= 12; ++a)
            for (long long b = -12; b <= 12; ++b)
                CHECK(nt::kronecker(a * b, n) == nt::kronecker(a, n) * nt::kronecker(b, n));
    }
    // (2|n) for odd n depends on n mod 8
    CHECK(nt::kronecker(2, 7) == 1);
    CHECK(nt::kronecker(2, 17) == 1);
    CHECK(nt::kronecker(2, 5) == -1);
    CHECK(nt::kronecker(2, 11) == -1);
}

TEST_CASE("mod_pow and mod_inverse") {
    CHECK(nt::mod_pow(2, 10, 1000) == 24);
    CHECK(nt::mod_pow(3, 0, 7) == 1);
    CHECK(nt::mod_pow(10, 9, 1000000007ULL) == 1000000000ULL);
    for (std::uint32_t p : {5u, 13u, 97u, 2147483647u}) {
        for (std::uint32_t a = 1; a <= 20; ++a) {
            const std::uint32_t inv = nt::mod_inverse(a % p == 0 ? 1 : a % p, p);
            const std::uint64_t prod =
                static_cast<std::uint64_t>(a % p == 0 ? 1 : a % p) * inv % p;
            CHECK(prod == 1);
        }
    }
}

TEST_CASE("prime_factors and radical") {
    CHECK(nt::prime_factors(1) == std::vector<long long>{});
    CHECK(nt::prime_factors(60) == std::vector<long long>{2, 3, 5});
    CHECK(nt::prime_factors(97) == std::vector<long long>{97});
    CHECK(nt::radical(1) == 1);
    CHECK(nt::radical(8) == 2);
    CHECK(nt::radical(360) == 30);
    CHECK(nt::radical(9797) == 9797); // 97 * 101, squarefree
}

TEST_CASE("primes_below") {
    CHECK(nt::primes_below(2) == std::vector<long long>{});
    CHECK(nt::primes_below(30) == std::vector<long long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    const auto primes = nt::primes_below(10000);
    CHECK(primes.size() == 1229);
    for (long long p : primes) CHECK(trial_division_prime(static_cast<std::uint64_t>(p)));
}

TEST_CASE("isqrt") {
    CHECK(nt::isqrt(0) == 0);
    CHECK(nt::isqrt(1) == 1);
    CHECK(nt::isqrt(3) == 1);
    CHECK(nt::isqrt(4) == 2);
    CHECK(nt::isqrt(999999999999LL) == 999999);
    CHECK(nt::isqrt(1000000000000LL) == 1000000);
}
