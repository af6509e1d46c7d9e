#include "qincon/numtheory.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qincon::nt {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

} // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    std::uint64_t r = 1;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, mod);
        base = mul_mod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // These witnesses decide primality for all n < 3.3e24, hence all u64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;
    }
    int v = 0;
    while ((n & 1) == 0) { n >>= 1; ++v; }
    if (v & 1) {
        // (a|2): 0 for even a (excluded above), +1 for a = +-1, -1 for a = +-3 (mod 8)
        long long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) k = -k;
    }
    // n now odd and positive: Jacobi with reciprocity
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            long long nm = n % 8;
            if (nm == 3 || nm == 5) k = -k;
        }
        std::swap(a, n);
        if ((a % 4 == 3) && (n % 4 == 3)) k = -k;
        a %= n;
    }
    return n == 1 ? k : 0;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t ell) {
    if (a % ell == 0) throw std::invalid_argument("mod_inverse: zero has no inverse");
    return static_cast<std::uint32_t>(mod_pow(a % ell, ell - 2, ell));
}

std::vector<long long> prime_factors(long long n) {
    if (n <= 0) throw std::invalid_argument("prime_factors: n must be positive");
    std::vector<long long> out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

long long radical(long long n) {
    long long r = 1;
    for (long long p : prime_factors(n)) r *= p;
    return r;
}

std::vector<long long> primes_below(long long bound) {
    std::vector<long long> out;
    if (bound <= 2) return out;
    std::vector<bool> sieve(static_cast<std::size_t>(bound), true);
    for (long long i = 2; i < bound; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (long long j = i * i; j < bound; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return out;
}

long long isqrt(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace qincon::nt
