#include "qincon/generators.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "qincon/numtheory.hpp"

namespace qincon {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

// sum (+-1)^i q^(step i), i.e. invert(1 -+ q^step), built directly.
TruncatedSeries geometric(std::size_t step, std::size_t trunc, std::optional<std::uint32_t> modulus,
                          bool alternating) {
    if (modulus) {
        const std::uint32_t ell = *modulus;
        std::vector<std::uint32_t> v(trunc + 1, 0);
        const std::uint32_t plus = 1 % ell;
        const std::uint32_t minus = (ell - 1) % ell;
        bool neg = false;
        for (std::size_t i = 0; i <= trunc; i += step) {
            v[i] = neg ? minus : plus;
            if (alternating) neg = !neg;
            if (step == 0) break;
        }
        return TruncatedSeries::from_residues(std::move(v), ell, 0);
    }
    std::vector<mpz_class> v(trunc + 1, mpz_class(0));
    bool neg = false;
    for (std::size_t i = 0; i <= trunc; i += step) {
        v[i] = neg ? -1 : 1;
        if (alternating) neg = !neg;
        if (step == 0) break;
    }
    return TruncatedSeries::from_exact(std::move(v), 0);
}

TruncatedSeries negate(const TruncatedSeries& a) {
    const std::size_t T = a.trunc();
    if (!a.modular()) {
        std::vector<mpz_class> out(T + 1);
        for (std::size_t n = 0; n <= T; ++n) out[n] = -a.exact_at(n);
        return TruncatedSeries::from_exact(std::move(out), a.offset24());
    }
    const std::uint32_t ell = *a.modulus();
    std::vector<std::uint32_t> out(T + 1);
    for (std::size_t n = 0; n <= T; ++n) {
        const std::uint32_t c = a.residue_at(n);
        out[n] = c == 0 ? 0 : ell - c;
    }
    return TruncatedSeries::from_residues(std::move(out), ell, a.offset24());
}

// Minimal sum of squares of r integers with a prescribed total d >= 0:
// spread d as evenly as possible.
long long min_sq_sum(long long d, long long r) {
    if (r <= 0) return d == 0 ? 0 : kInf;
    const long long a = d / r, b = d % r;
    return (r - b) * a * a + b * (a + 1) * (a + 1);
}

// ---- constant-term theta engine ------------------------------------------
//
// Work with doubled exponents e = 2q-degree so the half-integral steps j^2/2
// stay integral.  A stage-i state stores, for z-degrees d >= 0 (the product is
// symmetric under z -> 1/z), the coefficient rows of
// (sum_j z^j Q^(j^2))^i truncated at Q-degree E = 2T.  A row entry at (d, e)
// survives only if the remaining k-i factors can cancel the z-degree within
// budget: e + min_sq_sum(d, k-i) <= E.

long long stage_width(long long E, int stage, int k) {
    long long d = 0;
    while (min_sq_sum(d + 1, stage) + min_sq_sum(d + 1, k - stage) <= E) ++d;
    return d;
}

TruncatedSeries theta_constant_term(int k, std::size_t trunc, std::optional<std::uint32_t> modulus) {
    const long long E = 2 * static_cast<long long>(trunc);
    const long long J = nt::isqrt(E);

    if (modulus) {
        const std::uint32_t ell = *modulus;
        long long width_in = stage_width(E, 1, k);
        std::vector<std::vector<std::uint32_t>> S(width_in + 1,
                                                  std::vector<std::uint32_t>(E + 1, 0));
        for (long long d = 0; d <= width_in; ++d) S[d][d * d] = 1 % ell;
        std::vector<std::uint64_t> acc(E + 1);
        for (int stage = 1; stage < k; ++stage) {
            const long long width_out = stage_width(E, stage + 1, k);
            std::vector<std::vector<std::uint32_t>> out(
                width_out + 1, std::vector<std::uint32_t>(E + 1, 0));
            for (long long t = 0; t <= width_out; ++t) {
                std::fill(acc.begin(), acc.end(), 0);
                const long long out_lo = min_sq_sum(t, stage + 1);
                const long long out_hi = E - min_sq_sum(t, k - stage - 1);
                for (long long j = -J; j <= J; ++j) {
                    const long long s = t - j < 0 ? j - t : t - j;
                    if (s > width_in) continue;
                    const long long jj = j * j;
                    const long long lo = std::max(out_lo, jj + min_sq_sum(s, stage));
                    const long long hi = std::min(out_hi, jj + (E - min_sq_sum(s, k - stage)));
                    if (lo > hi) continue;
                    const std::uint32_t* src = S[s].data();
                    std::uint64_t* dst = acc.data();
                    for (long long e = lo; e <= hi; ++e) dst[e] += src[e - jj];
                }
                auto& row = out[t];
                for (long long e = std::max(out_lo, 0LL); e <= out_hi; ++e)
                    row[e] = static_cast<std::uint32_t>(acc[e] % ell);
            }
            S = std::move(out);
            width_in = width_out;
        }
        std::vector<std::uint32_t> theta(trunc + 1);
        for (std::size_t n = 0; n <= trunc; ++n) theta[n] = S[0][2 * n];
        for (long long e = 1; e <= E; e += 2)
            if (S[0][e] != 0) throw std::logic_error("theta: odd half-exponent survived");
        return TruncatedSeries::from_residues(std::move(theta), ell, 0);
    }

    long long width_in = stage_width(E, 1, k);
    std::vector<std::vector<mpz_class>> S(width_in + 1,
                                          std::vector<mpz_class>(E + 1, mpz_class(0)));
    for (long long d = 0; d <= width_in; ++d) S[d][d * d] = 1;
    for (int stage = 1; stage < k; ++stage) {
        const long long width_out = stage_width(E, stage + 1, k);
        std::vector<std::vector<mpz_class>> out(width_out + 1,
                                                std::vector<mpz_class>(E + 1, mpz_class(0)));
        for (long long t = 0; t <= width_out; ++t) {
            auto& row = out[t];
            const long long out_lo = min_sq_sum(t, stage + 1);
            const long long out_hi = E - min_sq_sum(t, k - stage - 1);
            for (long long j = -J; j <= J; ++j) {
                const long long s = t - j < 0 ? j - t : t - j;
                if (s > width_in) continue;
                const long long jj = j * j;
                const long long lo = std::max(out_lo, jj + min_sq_sum(s, stage));
                const long long hi = std::min(out_hi, jj + (E - min_sq_sum(s, k - stage)));
                for (long long e = lo; e <= hi; ++e) {
                    const mpz_class& v = S[s][e - jj];
                    if (mpz_sgn(v.get_mpz_t()) != 0)
                        mpz_add(row[e].get_mpz_t(), row[e].get_mpz_t(), v.get_mpz_t());
                }
            }
        }
        S = std::move(out);
        width_in = width_out;
    }
    std::vector<mpz_class> theta(trunc + 1);
    for (std::size_t n = 0; n <= trunc; ++n) theta[n] = S[0][2 * n];
    for (long long e = 1; e <= E; e += 2)
        if (mpz_sgn(S[0][e].get_mpz_t()) != 0)
            throw std::logic_error("theta: odd half-exponent survived");
    return TruncatedSeries::from_exact(std::move(theta), 0);
}

// ---- direct lattice walk ---------------------------------------------------
//
// Enumerate m in Z^(k-1) depth-first using 2Q = sum m_i^2 + (sum m_i)^2.
// With partial sums S = sum m_i^2 and L = sum m_i and r coordinates left, the
// best reachable value is S + L^2/(r+1), which gives an exact integer prune
// S(r+1) + L^2 <= 2T(r+1).

void lattice_walk(int depth, int dims, long long M, long long twoT, long long S, long long L,
                  std::vector<unsigned long long>& counts) {
    if (depth == dims) {
        counts[static_cast<std::size_t>((S + L * L) / 2)] += 1;
        return;
    }
    const long long r = dims - depth - 1;
    for (long long m = -M; m <= M; ++m) {
        const long long S2 = S + m * m;
        const long long L2 = L + m;
        if (S2 * (r + 1) + L2 * L2 > twoT * (r + 1)) continue;
        lattice_walk(depth + 1, dims, M, twoT, S2, L2, counts);
    }
}

TruncatedSeries theta_lattice(int k, std::size_t trunc, std::optional<std::uint32_t> modulus) {
    const int dims = k - 1;
    std::vector<unsigned long long> counts(trunc + 1, 0);
    if (dims == 0) {
        counts[0] = 1;
    } else {
        const long long twoT = 2 * static_cast<long long>(trunc);
        lattice_walk(0, dims, nt::isqrt(twoT), twoT, 0, 0, counts);
    }
    if (modulus) {
        const std::uint32_t ell = *modulus;
        std::vector<std::uint32_t> v(trunc + 1);
        for (std::size_t n = 0; n <= trunc; ++n)
            v[n] = static_cast<std::uint32_t>(counts[n] % ell);
        return TruncatedSeries::from_residues(std::move(v), ell, 0);
    }
    std::vector<mpz_class> v(trunc + 1);
    for (std::size_t n = 0; n <= trunc; ++n)
        v[n] = mpz_class(static_cast<unsigned long>(counts[n]));
    return TruncatedSeries::from_exact(std::move(v), 0);
}

} // namespace

TruncatedSeries partition_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus) {
    if (modulus) {
        const std::uint32_t ell = *modulus;
        std::vector<std::uint32_t> p(trunc + 1, 0);
        p[0] = 1 % ell;
        for (std::size_t n = 1; n <= trunc; ++n) {
            std::uint64_t s = 0; // < ~260 terms of size < 2^31: fits u64
            for (long long j = 1;; ++j) {
                const long long g1 = j * (3 * j - 1) / 2;
                if (g1 > static_cast<long long>(n)) break;
                const bool plus = (j & 1) != 0;
                s += plus ? p[n - g1] : ell - p[n - g1];
                const long long g2 = j * (3 * j + 1) / 2;
                if (g2 <= static_cast<long long>(n)) s += plus ? p[n - g2] : ell - p[n - g2];
            }
            p[n] = static_cast<std::uint32_t>(s % ell);
        }
        return TruncatedSeries::from_residues(std::move(p), ell, -1);
    }
    std::vector<mpz_class> p(trunc + 1, mpz_class(0));
    p[0] = 1;
    for (std::size_t n = 1; n <= trunc; ++n) {
        mpz_class& pn = p[n];
        for (long long j = 1;; ++j) {
            const long long g1 = j * (3 * j - 1) / 2;
            if (g1 > static_cast<long long>(n)) break;
            const bool plus = (j & 1) != 0;
            if (plus) pn += p[n - g1]; else pn -= p[n - g1];
            const long long g2 = j * (3 * j + 1) / 2;
            if (g2 <= static_cast<long long>(n)) {
                if (plus) pn += p[n - g2]; else pn -= p[n - g2];
            }
        }
    }
    return TruncatedSeries::from_exact(std::move(p), -1);
}

TruncatedSeries frobenius_theta(int k, std::size_t trunc, std::optional<std::uint32_t> modulus,
                                ThetaStrategy strategy) {
    if (k < 1) throw std::invalid_argument("frobenius_theta: k must be >= 1");
    if (strategy == ThetaStrategy::Auto)
        strategy = (k >= 4 || trunc >= 1000) ? ThetaStrategy::ConstantTerm
                                             : ThetaStrategy::LatticeEnum;
    if (k == 1) return TruncatedSeries::one(trunc, modulus);
    return strategy == ThetaStrategy::LatticeEnum ? theta_lattice(k, trunc, modulus)
                                                  : theta_constant_term(k, trunc, modulus);
}

TruncatedSeries frobenius_coeffs(int k, std::size_t trunc, std::optional<std::uint32_t> modulus,
                                 ThetaStrategy strategy) {
    TruncatedSeries theta = frobenius_theta(k, trunc, modulus, strategy);
    TruncatedSeries euler_pow = pow(euler_factor(1, trunc, modulus), -static_cast<long long>(k));
    return mul(theta, euler_pow).with_offset24(-k);
}

TruncatedSeries mock_f_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus) {
    TruncatedSeries res = TruncatedSeries::one(trunc, modulus);
    TruncatedSeries inv = TruncatedSeries::one(trunc, modulus);
    for (std::size_t n = 1; n * n <= trunc; ++n) {
        const TruncatedSeries geo = geometric(n, trunc, modulus, /*alternating=*/true);
        inv = mul(mul(inv, geo), geo);
        res = add(res, shift(inv, n * n));
    }
    return res;
}

TruncatedSeries mock_omega_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus) {
    TruncatedSeries res = TruncatedSeries::zero(trunc, modulus);
    TruncatedSeries inv = TruncatedSeries::one(trunc, modulus);
    for (std::size_t n = 0; 2 * n * n + 2 * n <= trunc; ++n) {
        const TruncatedSeries geo = geometric(2 * n + 1, trunc, modulus, /*alternating=*/false);
        inv = mul(mul(inv, geo), geo);
        res = add(res, shift(inv, 2 * n * n + 2 * n));
    }
    return res;
}

TruncatedSeries mock_nu_coeffs(std::size_t trunc, std::optional<std::uint32_t> modulus,
                               NuMethod method) {
    if (method == NuMethod::Defining) {
        TruncatedSeries res = TruncatedSeries::zero(trunc, modulus);
        TruncatedSeries inv = TruncatedSeries::one(trunc, modulus);
        for (std::size_t n = 0; n * n + n <= trunc; ++n) {
            inv = mul(inv, geometric(2 * n + 1, trunc, modulus, /*alternating=*/true));
            res = add(res, shift(inv, n * n + n));
        }
        return res;
    }
    // The even part is (prod (1+q^(2n)))^3 prod (1-q^(2n)); the odd part is
    // -q w(q^2) (signs follow the (-q; q^2) convention of the defining sum).
    const std::size_t half = trunc >= 1 ? (trunc - 1) / 2 : 0;
    const TruncatedSeries omega = mock_omega_coeffs(half, modulus);
    const TruncatedSeries odd_part = shift(dilate(omega, 2, trunc), 1);
    const TruncatedSeries e2 = euler_factor(2, trunc, modulus);
    const TruncatedSeries aux = mul(euler_factor(4, trunc, modulus), invert(e2));
    const TruncatedSeries even_part = mul(pow(aux, 3), e2);
    return add(negate(odd_part), even_part);
}

TruncatedSeries generate(const FamilySpec& family, std::size_t trunc,
                         std::optional<std::uint32_t> modulus, ThetaStrategy strategy) {
    switch (family.kind) {
        case FamilySpec::Kind::Partition: return partition_coeffs(trunc, modulus);
        case FamilySpec::Kind::Frobenius:
            return frobenius_coeffs(family.colors, trunc, modulus, strategy);
        case FamilySpec::Kind::MockF: return mock_f_coeffs(trunc, modulus);
        case FamilySpec::Kind::MockOmega: return mock_omega_coeffs(trunc, modulus);
        case FamilySpec::Kind::MockNu: return mock_nu_coeffs(trunc, modulus);
        case FamilySpec::Kind::Eta: return eta_quotient(family.eta_factors, trunc, modulus);
    }
    throw std::logic_error("unreachable");
}

SeedScan seed_scan(const TruncatedSeries& exact_coeffs, long m, std::uint32_t ell, long cls) {
    if (exact_coeffs.modular())
        throw std::invalid_argument("seed_scan needs exact coefficients: below-seed zeros must be exact");
    if (m < 1) throw std::invalid_argument("seed_scan: m must be >= 1");
    if (cls < 0 || cls >= m) throw std::invalid_argument("seed_scan: class must lie in [0, m)");
    if (!nt::is_prime(ell)) throw std::invalid_argument("seed_scan: ell must be prime");
    SeedScan result;
    for (std::size_t n = static_cast<std::size_t>(cls); n <= exact_coeffs.trunc();
         n += static_cast<std::size_t>(m)) {
        if (exact_coeffs.is_zero_at(n)) continue;
        result.t0 = static_cast<long>(n);
        const std::uint32_t r = exact_coeffs.mod_at(n, ell);
        if (r == 0) {
            result.status = SeedScan::Status::Unseedable;
        } else {
            result.status = SeedScan::Status::Seeded;
            result.residue = r;
        }
        return result;
    }
    result.status = SeedScan::Status::Exhausted;
    return result;
}

} // namespace qincon
