#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "qincon/series.hpp"

using namespace qincon;

namespace {

TruncatedSeries exact_of(std::vector<long> values, long offset24 = 0) {
    std::vector<mpz_class> coeffs;
    coeffs.reserve(values.size());
    for (long v : values) coeffs.emplace_back(v);
    return TruncatedSeries::from_exact(std::move(coeffs), offset24);
}

bool same_exact(const TruncatedSeries& a, const std::vector<long>& expected) {
    if (a.trunc() + 1 != expected.size()) return false;
    for (std::size_t n = 0; n < expected.size(); ++n)
        if (a.exact_at(n) != expected[n]) return false;
    return true;
}

} // namespace

TEST_CASE("factories and accessors") {
    const TruncatedSeries z = TruncatedSeries::zero(4);
    CHECK(z.trunc() == 4);
    CHECK_FALSE(z.modular());
    for (std::size_t n = 0; n <= 4; ++n) CHECK(z.is_zero_at(n));

    const TruncatedSeries o = TruncatedSeries::one(3, 7u, -2);
    CHECK(o.modular());
    CHECK(o.modulus() == 7u);
    CHECK(o.offset24() == -2);
    CHECK(o.residue_at(0) == 1);
    CHECK(o.residue_at(3) == 0);

    CHECK_THROWS_AS(TruncatedSeries::from_exact({}), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedSeries::from_residues({1, 2}, 6u), std::invalid_argument);  // composite
    CHECK_THROWS_AS(TruncatedSeries::from_residues({1}, 2147483648u), std::invalid_argument);
    CHECK_THROWS_AS(exact_of({1, 2}).residue_at(0), std::logic_error);
    CHECK_THROWS_AS(TruncatedSeries::one(2, 5u).exact_at(0), std::logic_error);
}

TEST_CASE("mod_at works in both storage modes, including negatives") {
    const TruncatedSeries e = exact_of({1, -2, 7, -5});
    CHECK(e.mod_at(0, 5) == 1);
    CHECK(e.mod_at(1, 5) == 3);
    CHECK(e.mod_at(2, 5) == 2);
    CHECK(e.mod_at(3, 5) == 0);
    const TruncatedSeries r = reduce_mod(e, 5);
    CHECK(r.modular());
    for (std::size_t n = 0; n <= 3; ++n) CHECK(r.mod_at(n, 5) == e.mod_at(n, 5));
    CHECK_THROWS_AS(r.mod_at(0, 7), std::invalid_argument);
    CHECK_THROWS_AS(reduce_mod(r, 5), std::invalid_argument);
}

TEST_CASE("mul truncates at the shorter operand and adds offsets") {
    const TruncatedSeries a = exact_of({1, 1}, 1);        // 1 + q
    const TruncatedSeries b = exact_of({1, -1, 0}, -3);   // 1 - q
    const TruncatedSeries ab = mul(a, b);
    CHECK(ab.trunc() == 1);
    CHECK(ab.offset24() == -2);
    CHECK(ab.exact_at(0) == 1);
    CHECK(ab.exact_at(1) == 0); // the -q^2 term is beyond the truncation

    const TruncatedSeries c = exact_of({1, -1, 0, 0});
    const TruncatedSeries ac = mul(exact_of({1, 1, 0, 0}), c);
    CHECK(same_exact(ac, {1, 0, -1, 0}));
}

TEST_CASE("mul rejects mixed coefficient rings") {
    CHECK_THROWS_AS(mul(exact_of({1, 1}), TruncatedSeries::one(1, 5u)), std::invalid_argument);
    const TruncatedSeries m5 = TruncatedSeries::one(3, 5u);
    const TruncatedSeries m7 = TruncatedSeries::one(3, 7u);
    CHECK_THROWS_AS(mul(m5, m7), std::invalid_argument);
}

TEST_CASE("euler_factor matches the pentagonal expansion") {
    const TruncatedSeries e = euler_factor(1, 8);
    CHECK(same_exact(e, {1, -1, -1, 0, 0, 1, 0, 1, 0}));
    const TruncatedSeries e3 = euler_factor(3, 12);
    // substitute q -> q^3 in 1 - q - q^2 + q^5 + q^7 - ...
    CHECK(same_exact(e3, {1, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0}));
    CHECK_THROWS_AS(euler_factor(0, 5), std::invalid_argument);
}

TEST_CASE("invert is a two-sided inverse") {
    const TruncatedSeries e = euler_factor(1, 64);
    const TruncatedSeries inv = invert(e);
    CHECK(inv.offset24() == 0);
    const TruncatedSeries prod = mul(e, inv);
    CHECK(prod.exact_at(0) == 1);
    for (std::size_t n = 1; n <= 64; ++n) CHECK(prod.is_zero_at(n));

    const TruncatedSeries me = euler_factor(1, 64, 13u);
    const TruncatedSeries mprod = mul(me, invert(me));
    CHECK(mprod.residue_at(0) == 1);
    for (std::size_t n = 1; n <= 64; ++n) CHECK(mprod.residue_at(n) == 0);

    CHECK_THROWS_AS(invert(exact_of({2, 1})), std::invalid_argument);
    CHECK_THROWS_AS(invert(TruncatedSeries::zero(3, 5u)), std::invalid_argument);
}

TEST_CASE("invert negates the prefactor") {
    const TruncatedSeries e = euler_factor(1, 10).with_offset24(1); // eta(z) up to q^(1/24)
    const TruncatedSeries inv = invert(e);
    CHECK(inv.offset24() == -1);
}

TEST_CASE("pow: binary exponentiation, negative powers, identity") {
    const TruncatedSeries s = exact_of({1, 2, 1, 0, 0, 0}, 2);
    const TruncatedSeries s3 = pow(s, 3);
    CHECK(s3.offset24() == 6);
    CHECK(same_exact(s3, {1, 6, 15, 20, 15, 6})); // (1+q)^6
    CHECK(same_exact(pow(s, 1), {1, 2, 1, 0, 0, 0}));

    const TruncatedSeries one = pow(s, 0);
    CHECK(one.exact_at(0) == 1);
    CHECK(one.offset24() == 0);
    for (std::size_t n = 1; n <= 5; ++n) CHECK(one.is_zero_at(n));

    const TruncatedSeries e = euler_factor(1, 40);
    const TruncatedSeries back = mul(pow(e, -2), pow(e, 2));
    CHECK(back.exact_at(0) == 1);
    for (std::size_t n = 1; n <= 40; ++n) CHECK(back.is_zero_at(n));
    // pow(e, -1) == invert(e)
    const TruncatedSeries pinv = pow(e, -1);
    const TruncatedSeries inv = invert(e);
    for (std::size_t n = 0; n <= 40; ++n) CHECK(pinv.exact_at(n) == inv.exact_at(n));
}

TEST_CASE("eta_quotient collects q^(1/24) powers into the offset") {
    const TruncatedSeries eta1 = eta_quotient({{1, 1}}, 8);
    CHECK(eta1.offset24() == 1);
    CHECK(same_exact(eta1, {1, -1, -1, 0, 0, 1, 0, 1, 0}));

    // eta(z)^2 eta(2z)^-1, offset 1*2 + 2*(-1) = 0
    const TruncatedSeries quot = eta_quotient({{1, 2}, {2, -1}}, 30);
    CHECK(quot.offset24() == 0);
    // phi(-q) = sum_{n in Z} (-1)^n q^(n^2) = 1 - 2q + 2q^4 - 2q^9 + ...
    std::vector<long> phi(31, 0);
    phi[0] = 1;
    for (long n = 1; n * n <= 30; ++n) phi[static_cast<std::size_t>(n) * n] = (n % 2 ? -2 : 2);
    CHECK(same_exact(quot, phi));
}

TEST_CASE("add requires matching modulus and offset") {
    const TruncatedSeries a = exact_of({1, 2, 3});
    const TruncatedSeries b = exact_of({4, 5, 6});
    CHECK(same_exact(add(a, b), {5, 7, 9}));
    CHECK_THROWS_AS(add(a, exact_of({1, 2, 3}, 5)), std::invalid_argument);
    CHECK_THROWS_AS(add(a, TruncatedSeries::one(2, 5u)), std::invalid_argument);
}

TEST_CASE("shift and dilate") {
    const TruncatedSeries a = exact_of({1, 2, 3, 4}, 7);
    const TruncatedSeries sh = shift(a, 2);
    CHECK(sh.offset24() == 7);
    CHECK(same_exact(sh, {0, 0, 1, 2}));

    const TruncatedSeries di = dilate(a, 3, 8);
    CHECK(same_exact(di, {1, 0, 0, 2, 0, 0, 3, 0, 0}));
    CHECK_THROWS_AS(dilate(a, 0, 5), std::invalid_argument);
}

TEST_CASE("extract_progression slices coefficients and tracks the exponent") {
    const TruncatedSeries a = exact_of({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, -1);
    const CoeffSlice slice = extract_progression(a, 5, 4);
    REQUIRE(slice.size() == 2);
    CHECK(slice.exact[0] == 4);
    CHECK(slice.exact[1] == 9);
    CHECK(slice.offset_num == 24 * 4 - 1);
    CHECK(slice.offset_den == 24 * 5);

    const CoeffSlice whole = extract_progression(a, 1, 0);
    CHECK(whole.size() == 11);

    CHECK_THROWS_AS(extract_progression(a, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(extract_progression(a, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(extract_progression(a, 5, -1), std::invalid_argument);
}

TEST_CASE("extract_progression near the truncation boundary") {
    const TruncatedSeries a = exact_of({1, 2, 3, 4, 5});      // trunc = 4
    CHECK(extract_progression(a, 3, 1).size() == 2);          // n = 1, 4
    CHECK(extract_progression(a, 7, 4).size() == 1);          // n = 4 only
    CHECK(extract_progression(a, 7, 6).empty());              // 6 > trunc
}

TEST_CASE("with_offset24 changes only the prefactor") {
    const TruncatedSeries a = exact_of({3, 1, 4});
    const TruncatedSeries b = a.with_offset24(-9);
    CHECK(b.offset24() == -9);
    CHECK(same_exact(b, {3, 1, 4}));
    CHECK(a.offset24() == 0); // the original is untouched
}
