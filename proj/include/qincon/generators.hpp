#pragma once

#include <cstdint>
#include <optional>

#include "qincon/family.hpp"
#include "qincon/series.hpp"

namespace qincon {

// How to expand the (k-1)-dimensional theta series
//   Theta_k(q) = sum_{m in Z^(k-1)} q^(Q(m)),  Q(m) = sum m_i^2 + sum_{i<j} m_i m_j.
//
// LatticeEnum walks the lattice points directly (transparent, fine for small
// k and truncation, and the reference the other path is checked against).
// ConstantTerm extracts the z^0 coefficient of (sum_j z^j q^(j^2/2))^k with
// aggressive pruning of z-degrees that cannot return to 0 within the q-budget;
// it is the production path for k >= 4 or deep truncations.
enum class ThetaStrategy { Auto, LatticeEnum, ConstantTerm };

// Which route expands nu: its defining q-series, or the split into
// -q w(q^2) + (prod (1+q^(2n)))^3 prod (1-q^(2n)).  The two must agree.
enum class NuMethod { Defining, Identity };

// 1/eta-style partition numbers via the pentagonal recurrence
// p(n) = sum_{j>=1} (-1)^(j+1) [p(n - j(3j-1)/2) + p(n - j(3j+1)/2)].
TruncatedSeries partition_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus = {});

TruncatedSeries frobenius_theta(int k, std::size_t trunc, std::optional<std::uint32_t> modulus = {},
                                ThetaStrategy strategy = ThetaStrategy::Auto);

// cphi_k(n): Theta_k / (q;q)_inf^k, with offset24 = -k.
TruncatedSeries frobenius_coeffs(int k, std::size_t trunc, std::optional<std::uint32_t> modulus = {},
                                 ThetaStrategy strategy = ThetaStrategy::Auto);

// f(q) = 1 + sum_{n>=1} q^(n^2) / ((1+q)(1+q^2)...(1+q^n))^2
TruncatedSeries mock_f_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus = {});

// w(q) = sum_{n>=0} q^(2n^2+2n) / ((1-q)(1-q^3)...(1-q^(2n+1)))^2
TruncatedSeries mock_omega_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus = {});

// nu(q) = sum_{n>=0} q^(n^2+n) / ((1+q)(1+q^3)...(1+q^(2n+1)))
TruncatedSeries mock_nu_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus = {},
                               NuMethod method = NuMethod::Defining);

TruncatedSeries generate(const FamilySpec& family, std::size_t trunc,
                         std::optional<std::uint32_t> modulus = {},
                         ThetaStrategy strategy = ThetaStrategy::Auto);

// Smallest admissible theorem seed in a residue class: the first index
// n = cls (mod m) whose coefficient is nonzero.  The scan runs on exact
// coefficients only -- "zero" must mean zero in Z, not zero mod ell.
struct SeedScan {
    enum class Status {
        Seeded,     // found t0 with a(t0) != 0 and ell does not divide a(t0)
        Unseedable, // first nonzero coefficient in the class is divisible by ell
        Exhausted   // every retained coefficient in the class is zero
    };
    Status status = Status::Exhausted;
    long t0 = -1;              // index of the first nonzero entry (Seeded/Unseedable)
    std::uint32_t residue = 0; // a(t0) mod ell when Seeded
};

SeedScan seed_scan(const TruncatedSeries& exact_coeffs, long m, std::uint32_t ell, long cls);

} // namespace qincon
