#include "qincon/series.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "qincon/numtheory.hpp"

namespace qincon {

namespace {

constexpr std::uint32_t kMaxModulus = 0x7fffffffu; // ell < 2^31

void check_modulus(std::uint32_t ell) {
    if (ell > kMaxModulus) throw std::invalid_argument("modulus must be < 2^31");
    if (!nt::is_prime(ell)) throw std::invalid_argument("modulus must be prime, got " + std::to_string(ell));
}

// Accumulating `terms` products below (ell-1)^2 stays within u64?
bool lazy_ok(std::uint32_t ell, std::size_t terms) {
    if (terms == 0) return true;
    const std::uint64_t p = static_cast<std::uint64_t>(ell - 1) * (ell - 1);
    return p <= std::numeric_limits<std::uint64_t>::max() / terms;
}

std::vector<std::size_t> support(const std::vector<std::uint32_t>& v, std::size_t upto) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i <= upto && i < v.size(); ++i)
        if (v[i]) s.push_back(i);
    return s;
}

std::vector<std::size_t> support(const std::vector<mpz_class>& v, std::size_t upto) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i <= upto && i < v.size(); ++i)
        if (mpz_sgn(v[i].get_mpz_t()) != 0) s.push_back(i);
    return s;
}

} // namespace

TruncatedSeries TruncatedSeries::zero(std::size_t trunc, std::optional<std::uint32_t> modulus,
                                      long offset24) {
    TruncatedSeries s;
    s.count_ = trunc + 1;
    s.offset24_ = offset24;
    s.modulus_ = modulus;
    if (modulus) {
        check_modulus(*modulus);
        s.residues_.assign(s.count_, 0);
    } else {
        s.exact_.assign(s.count_, mpz_class(0));
    }
    return s;
}

TruncatedSeries TruncatedSeries::one(std::size_t trunc, std::optional<std::uint32_t> modulus,
                                     long offset24) {
    TruncatedSeries s = zero(trunc, modulus, offset24);
    if (modulus) {
        s.residues_[0] = (*modulus == 1) ? 0 : 1;
    } else {
        s.exact_[0] = 1;
    }
    return s;
}

TruncatedSeries TruncatedSeries::from_exact(std::vector<mpz_class> coeffs, long offset24) {
    if (coeffs.empty()) throw std::invalid_argument("series needs at least the constant term");
    TruncatedSeries s;
    s.count_ = coeffs.size();
    s.offset24_ = offset24;
    s.exact_ = std::move(coeffs);
    return s;
}

TruncatedSeries TruncatedSeries::from_residues(std::vector<std::uint32_t> coeffs,
                                               std::uint32_t modulus, long offset24) {
    if (coeffs.empty()) throw std::invalid_argument("series needs at least the constant term");
    check_modulus(modulus);
    for (std::uint32_t& c : coeffs)
        if (c >= modulus) c %= modulus;
    TruncatedSeries s;
    s.count_ = coeffs.size();
    s.offset24_ = offset24;
    s.modulus_ = modulus;
    s.residues_ = std::move(coeffs);
    return s;
}

const mpz_class& TruncatedSeries::exact_at(std::size_t n) const {
    if (modular()) throw std::logic_error("exact_at on a modular series");
    return exact_.at(n);
}

std::uint32_t TruncatedSeries::residue_at(std::size_t n) const {
    if (!modular()) throw std::logic_error("residue_at on an exact series");
    return residues_.at(n);
}

bool TruncatedSeries::is_zero_at(std::size_t n) const {
    if (modular()) return residues_.at(n) == 0;
    return mpz_sgn(exact_.at(n).get_mpz_t()) == 0;
}

std::uint32_t TruncatedSeries::mod_at(std::size_t n, std::uint32_t ell) const {
    if (modular()) {
        if (*modulus_ != ell) throw std::invalid_argument("mod_at: series lives mod a different prime");
        return residues_.at(n);
    }
    return static_cast<std::uint32_t>(mpz_fdiv_ui(exact_.at(n).get_mpz_t(), ell));
}

const std::vector<mpz_class>& TruncatedSeries::exact_data() const {
    if (modular()) throw std::logic_error("exact_data on a modular series");
    return exact_;
}

const std::vector<std::uint32_t>& TruncatedSeries::residue_data() const {
    if (!modular()) throw std::logic_error("residue_data on an exact series");
    return residues_;
}

TruncatedSeries TruncatedSeries::with_offset24(long offset24) const {
    TruncatedSeries s = *this;
    s.offset24_ = offset24;
    return s;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("mul: operands live in different coefficient rings");
    const std::size_t T = std::min(a.trunc(), b.trunc());
    const long off = a.offset24() + b.offset24();

    if (!a.modular()) {
        const auto& A = a.exact_data();
        const auto& B = b.exact_data();
        auto sa = support(A, T);
        auto sb = support(B, T);
        const bool a_outer = sa.size() <= sb.size();
        const auto& outer_sup = a_outer ? sa : sb;
        const auto& O = a_outer ? A : B;
        const auto& I = a_outer ? B : A;
        std::vector<mpz_class> out(T + 1, mpz_class(0));
        for (std::size_t i : outer_sup) {
            const mpz_class& oi = O[i];
            const std::size_t jmax = T - i;
            for (std::size_t j = 0; j <= jmax; ++j) {
                if (mpz_sgn(I[j].get_mpz_t()) == 0) continue;
                mpz_addmul(out[i + j].get_mpz_t(), oi.get_mpz_t(), I[j].get_mpz_t());
            }
        }
        return TruncatedSeries::from_exact(std::move(out), off);
    }

    const std::uint32_t ell = *a.modulus();
    const auto& A = a.residue_data();
    const auto& B = b.residue_data();
    auto sa = support(A, T);
    auto sb = support(B, T);
    const bool a_outer = sa.size() <= sb.size();
    const auto& outer_sup = a_outer ? sa : sb;
    const auto& O = a_outer ? A : B;
    const auto& I = a_outer ? B : A;
    std::vector<std::uint64_t> acc(T + 1, 0);
    if (lazy_ok(ell, outer_sup.size())) {
        for (std::size_t i : outer_sup) {
            const std::uint64_t oi = O[i];
            const std::size_t jmax = T - i;
            std::uint64_t* dst = acc.data() + i;
            for (std::size_t j = 0; j <= jmax; ++j) dst[j] += oi * I[j];
        }
    } else {
        for (std::size_t i : outer_sup) {
            const std::uint64_t oi = O[i];
            const std::size_t jmax = T - i;
            std::uint64_t* dst = acc.data() + i;
            for (std::size_t j = 0; j <= jmax; ++j) dst[j] = (dst[j] + oi * I[j]) % ell;
        }
    }
    std::vector<std::uint32_t> out(T + 1);
    for (std::size_t n = 0; n <= T; ++n) out[n] = static_cast<std::uint32_t>(acc[n] % ell);
    return TruncatedSeries::from_residues(std::move(out), ell, off);
}

TruncatedSeries invert(const TruncatedSeries& a) {
    const std::size_t T = a.trunc();
    const long off = -a.offset24();

    if (!a.modular()) {
        const auto& A = a.exact_data();
        const mpz_class& c0 = A[0];
        if (c0 != 1 && c0 != -1)
            throw std::invalid_argument("invert: exact series needs constant term +-1");
        auto sup = support(A, T);
        // drop the constant term from the support
        std::vector<std::size_t> tail(sup.begin() + 1, sup.end());
        std::vector<mpz_class> out(T + 1, mpz_class(0));
        out[0] = c0;
        mpz_class s;
        for (std::size_t n = 1; n <= T; ++n) {
            s = 0;
            for (std::size_t k : tail) {
                if (k > n) break;
                mpz_addmul(s.get_mpz_t(), A[k].get_mpz_t(), out[n - k].get_mpz_t());
            }
            // c0 * out[n] + s = 0
            if (c0 == 1) {
                out[n] = -s;
            } else {
                out[n] = s;
            }
        }
        return TruncatedSeries::from_exact(std::move(out), off);
    }

    const std::uint32_t ell = *a.modulus();
    const auto& A = a.residue_data();
    if (A[0] == 0) throw std::invalid_argument("invert: constant term is zero mod ell");
    const std::uint64_t inv0 = nt::mod_inverse(A[0], ell);
    auto sup = support(A, T);
    std::vector<std::size_t> tail(sup.begin() + 1, sup.end());
    std::vector<std::uint32_t> out(T + 1, 0);
    out[0] = static_cast<std::uint32_t>(inv0);
    const bool lazy = lazy_ok(ell, tail.size() + 1);
    for (std::size_t n = 1; n <= T; ++n) {
        std::uint64_t s = 0;
        if (lazy) {
            for (std::size_t k : tail) {
                if (k > n) break;
                s += static_cast<std::uint64_t>(A[k]) * out[n - k];
            }
            s %= ell;
        } else {
            for (std::size_t k : tail) {
                if (k > n) break;
                s = (s + static_cast<std::uint64_t>(A[k]) * out[n - k]) % ell;
            }
        }
        out[n] = static_cast<std::uint32_t>(s == 0 ? 0 : (ell - s) * inv0 % ell);
    }
    return TruncatedSeries::from_residues(std::move(out), ell, off);
}

TruncatedSeries pow(const TruncatedSeries& a, long long e) {
    if (e == 0) return TruncatedSeries::one(a.trunc(), a.modulus());
    TruncatedSeries base = e < 0 ? invert(a) : a;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                                 : static_cast<unsigned long long>(e);
    TruncatedSeries result = TruncatedSeries::one(a.trunc(), a.modulus());
    while (k) {
        if (k & 1) result = mul(result, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return result;
}

TruncatedSeries euler_factor(long delta, std::size_t trunc, std::optional<std::uint32_t> modulus) {
    if (delta < 1) throw std::invalid_argument("euler_factor: delta must be >= 1");
    // prod (1 - q^(delta n)) = 1 + sum_{j>=1} (-1)^j (q^(delta j(3j-1)/2) + q^(delta j(3j+1)/2))
    if (modulus) {
        std::vector<std::uint32_t> v(trunc + 1, 0);
        const std::uint32_t ell = *modulus;
        v[0] = 1 % ell;
        for (long long j = 1;; ++j) {
            const long long g1 = delta * (j * (3 * j - 1) / 2);
            if (g1 > static_cast<long long>(trunc)) break;
            const std::uint32_t val = (j & 1) ? (ell - 1) % ell : 1 % ell;
            v[static_cast<std::size_t>(g1)] = val;
            const long long g2 = delta * (j * (3 * j + 1) / 2);
            if (g2 <= static_cast<long long>(trunc)) v[static_cast<std::size_t>(g2)] = val;
        }
        return TruncatedSeries::from_residues(std::move(v), ell, 0);
    }
    std::vector<mpz_class> v(trunc + 1, mpz_class(0));
    v[0] = 1;
    for (long long j = 1;; ++j) {
        const long long g1 = delta * (j * (3 * j - 1) / 2);
        if (g1 > static_cast<long long>(trunc)) break;
        const int val = (j & 1) ? -1 : 1;
        v[static_cast<std::size_t>(g1)] = val;
        const long long g2 = delta * (j * (3 * j + 1) / 2);
        if (g2 <= static_cast<long long>(trunc)) v[static_cast<std::size_t>(g2)] = val;
    }
    return TruncatedSeries::from_exact(std::move(v), 0);
}

TruncatedSeries eta_quotient(const std::vector<std::pair<long, long>>& factors, std::size_t trunc,
                             std::optional<std::uint32_t> modulus) {
    long offset = 0;
    TruncatedSeries out = TruncatedSeries::one(trunc, modulus);
    for (const auto& [delta, r] : factors) {
        if (delta < 1) throw std::invalid_argument("eta_quotient: delta must be >= 1");
        offset += delta * r;
        if (r == 0) continue;
        out = mul(out, pow(euler_factor(delta, trunc, modulus), r));
    }
    return out.with_offset24(offset);
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("add: operands live in different coefficient rings");
    if (a.offset24() != b.offset24())
        throw std::invalid_argument("add: operands carry different q^(1/24) prefactors");
    const std::size_t T = std::min(a.trunc(), b.trunc());
    if (!a.modular()) {
        std::vector<mpz_class> out(T + 1);
        for (std::size_t n = 0; n <= T; ++n) out[n] = a.exact_at(n) + b.exact_at(n);
        return TruncatedSeries::from_exact(std::move(out), a.offset24());
    }
    const std::uint32_t ell = *a.modulus();
    std::vector<std::uint32_t> out(T + 1);
    for (std::size_t n = 0; n <= T; ++n) {
        std::uint32_t s = a.residue_at(n) + b.residue_at(n);
        out[n] = s >= ell ? s - ell : s;
    }
    return TruncatedSeries::from_residues(std::move(out), ell, a.offset24());
}

TruncatedSeries shift(const TruncatedSeries& a, std::size_t s) {
    const std::size_t T = a.trunc();
    if (!a.modular()) {
        std::vector<mpz_class> out(T + 1, mpz_class(0));
        for (std::size_t n = s; n <= T; ++n) out[n] = a.exact_at(n - s);
        return TruncatedSeries::from_exact(std::move(out), a.offset24());
    }
    std::vector<std::uint32_t> out(T + 1, 0);
    for (std::size_t n = s; n <= T; ++n) out[n] = a.residue_at(n - s);
    return TruncatedSeries::from_residues(std::move(out), *a.modulus(), a.offset24());
}

TruncatedSeries dilate(const TruncatedSeries& a, std::size_t stride, std::size_t new_trunc) {
    if (stride < 1) throw std::invalid_argument("dilate: stride must be >= 1");
    const long off = a.offset24() * static_cast<long>(stride);
    if (!a.modular()) {
        std::vector<mpz_class> out(new_trunc + 1, mpz_class(0));
        for (std::size_t i = 0; i <= a.trunc() && i * stride <= new_trunc; ++i)
            out[i * stride] = a.exact_at(i);
        return TruncatedSeries::from_exact(std::move(out), off);
    }
    std::vector<std::uint32_t> out(new_trunc + 1, 0);
    for (std::size_t i = 0; i <= a.trunc() && i * stride <= new_trunc; ++i)
        out[i * stride] = a.residue_at(i);
    return TruncatedSeries::from_residues(std::move(out), *a.modulus(), off);
}

TruncatedSeries reduce_mod(const TruncatedSeries& a, std::uint32_t ell) {
    if (a.modular()) throw std::invalid_argument("reduce_mod: series is already modular");
    check_modulus(ell);
    std::vector<std::uint32_t> out(a.trunc() + 1);
    for (std::size_t n = 0; n <= a.trunc(); ++n)
        out[n] = static_cast<std::uint32_t>(mpz_fdiv_ui(a.exact_at(n).get_mpz_t(), ell));
    return TruncatedSeries::from_residues(std::move(out), ell, a.offset24());
}

CoeffSlice extract_progression(const TruncatedSeries& a, long m, long t) {
    if (m < 1) throw std::invalid_argument("extract_progression: m must be >= 1");
    if (t < 0 || t >= m) throw std::invalid_argument("extract_progression: t must lie in [0, m)");
    CoeffSlice slice;
    slice.modulus = a.modulus();
    slice.offset_num = 24LL * t + a.offset24();
    slice.offset_den = 24LL * m;
    if (static_cast<std::size_t>(t) > a.trunc()) return slice;
    const std::size_t count = (a.trunc() - static_cast<std::size_t>(t)) / static_cast<std::size_t>(m) + 1;
    if (a.modular()) {
        slice.residues.reserve(count);
        for (std::size_t n = 0; n < count; ++n)
            slice.residues.push_back(a.residue_at(n * m + t));
    } else {
        slice.exact.reserve(count);
        for (std::size_t n = 0; n < count; ++n)
            slice.exact.push_back(a.exact_at(n * m + t));
    }
    return slice;
}

} // namespace qincon
