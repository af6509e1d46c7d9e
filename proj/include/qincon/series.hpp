#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qincon {

// A truncated q-expansion
//
//     q^(offset24/24) * sum_{n=0}^{trunc} c(n) q^n,
//
// with coefficients either exact integers or residues mod a prime ell < 2^31.
// The fractional prefactor is bookkeeping for eta-type families (1/eta(z) =
// q^(-1/24) sum p(n) q^n and friends); arithmetic tracks it but coefficient
// indices are always the plain n of the sum.  Series are immutable: every
// operation returns a fresh value.
class TruncatedSeries {
public:
    static TruncatedSeries zero(std::size_t trunc, std::optional<std::uint32_t> modulus = {},
                                long offset24 = 0);
    static TruncatedSeries one(std::size_t trunc, std::optional<std::uint32_t> modulus = {},
                               long offset24 = 0);
    static TruncatedSeries from_exact(std::vector<mpz_class> coeffs, long offset24 = 0);
    static TruncatedSeries from_residues(std::vector<std::uint32_t> coeffs, std::uint32_t modulus,
                                         long offset24 = 0);

    std::size_t trunc() const { return count_ - 1; }
    long offset24() const { return offset24_; }
    std::optional<std::uint32_t> modulus() const { return modulus_; }
    bool modular() const { return modulus_.has_value(); }

    const mpz_class& exact_at(std::size_t n) const;
    std::uint32_t residue_at(std::size_t n) const;
    bool is_zero_at(std::size_t n) const;
    // Residue of c(n) mod ell for either storage mode; a modular series must
    // already live mod the same ell.
    std::uint32_t mod_at(std::size_t n, std::uint32_t ell) const;

    const std::vector<mpz_class>& exact_data() const;
    const std::vector<std::uint32_t>& residue_data() const;

    TruncatedSeries with_offset24(long offset24) const;

private:
    TruncatedSeries() = default;

    std::size_t count_ = 0; // trunc + 1
    long offset24_ = 0;
    std::optional<std::uint32_t> modulus_;
    std::vector<mpz_class> exact_;
    std::vector<std::uint32_t> residues_;
};

// Cauchy product truncated at min(a.trunc, b.trunc); offsets add.  The outer
// loop runs over the operand with the smaller support, so multiplying by a
// sparse series (pentagonal-number products, geometric factors) costs
// O(trunc * support) rather than O(trunc^2).
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

// Multiplicative inverse up to the truncation.  Exact mode requires c(0) = +-1,
// modular mode c(0) != 0; the offset negates.
TruncatedSeries invert(const TruncatedSeries& a);

// Binary exponentiation; e < 0 inverts first; pow(a, 0) = 1 (offset 0).
TruncatedSeries pow(const TruncatedSeries& a, long long e);

// prod_{n>=1} (1 - q^(delta n)) truncated at T, built sparsely from the
// pentagonal number theorem.  No prefactor: offset24 = 0.
TruncatedSeries euler_factor(long delta, std::size_t trunc,
                             std::optional<std::uint32_t> modulus = {});

// prod_delta eta(delta z)^(r_delta) expanded around q = 0 with the q^(1/24)
// powers collected into offset24 = sum delta * r_delta.
TruncatedSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, std::size_t trunc,
                             std::optional<std::uint32_t> modulus = {});

// a + b (equal modulus and offset required).
TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);

// a * q^s, same truncation (top coefficients fall off the end).
TruncatedSeries shift(const TruncatedSeries& a, std::size_t s);

// Substitute q -> q^stride and re-truncate at new_trunc.
TruncatedSeries dilate(const TruncatedSeries& a, std::size_t stride, std::size_t new_trunc);

// Reduce an exact series mod a prime ell < 2^31 (nonnegative representatives).
TruncatedSeries reduce_mod(const TruncatedSeries& a, std::uint32_t ell);

// The arithmetic-progression slice b(n) = c(m n + t).  May be empty (t beyond
// the truncation).  The fractional exponent of the sliced family,
// (t + offset24/24)/m = offset_num / offset_den, is carried as metadata only.
struct CoeffSlice {
    std::optional<std::uint32_t> modulus;
    std::vector<mpz_class> exact;
    std::vector<std::uint32_t> residues;
    long long offset_num = 0;
    long long offset_den = 24;

    std::size_t size() const { return modulus ? residues.size() : exact.size(); }
    bool empty() const { return size() == 0; }
};

CoeffSlice extract_progression(const TruncatedSeries& a, long m, long t);

} // namespace qincon
