#include "qincon/sieve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qincon/errors.hpp"
#include "qincon/generators.hpp"
#include "qincon/numtheory.hpp"

namespace qincon {

namespace {

long floor_mod(long long a, long long m) { return static_cast<long>(((a % m) + m) % m); }

// Core sieve map.  t = t0 c^2 + B (c^2 - 1)/24 depends on c only through
// c^2 mod 24m, so walking c in [1, 24m] with gcd(c, coprime_to) = 1 covers
// every admissible multiplier.  coprime_to must kill the primes 2 and 3 so
// that c^2 = 1 (mod 24) and the division by 24 is exact.
ResidueImage progression_image(long B, long m, long t0, long long coprime_to) {
    if (m < 1) throw std::invalid_argument("sieve: m must be >= 1");
    if (t0 < 0 || t0 >= m) throw std::invalid_argument("sieve: t0 must lie in [0, m)");
    if (coprime_to % 6 != 0) throw std::logic_error("sieve: admissibility modulus must kill 2 and 3");
    ResidueImage image;
    const long long M24 = 24LL * m;
    for (long long c = 1; c <= M24; ++c) {
        if (std::gcd(c, coprime_to) != 1) continue;
        const long long s = c * c % M24;       // s = c^2 mod 24m, s = 1 (mod 24)
        const long long quot = (s - 1) / 24;   // (c^2 - 1)/24 mod m
        const long t = floor_mod(t0 * (s % m) + B * quot, m);
        image.emplace(t, static_cast<long>(c));  // keeps the smallest witness
    }
    return image;
}

mpz_class even_k_exclusion_product(long k) {
    const mpz_class K(k);
    return K * (K * K - 2 * K + 9) * (K * K * K * K - 6 * K * K * K + 49 * K * K - 48 * K + 112);
}

void require_corollary_prime(std::uint32_t ell) {
    if (ell < 5 || !nt::is_prime(ell))
        throw PreconditionNotMet("corollaries require a prime ell >= 5, got " + std::to_string(ell));
}

ConditionItem kronecker_item(const std::string& name, long long a, std::uint32_t ell) {
    const int s = nt::kronecker(a, ell);
    return ConditionItem{name, s == -1, s};
}

} // namespace

ResidueImage prohibited_residues_eta(long B, long level, long m, long t0) {
    if (level < 1) throw std::invalid_argument("sieve: level must be >= 1");
    // Admissible multipliers are coprime to 6*level*m; a class c mod 24m
    // contains such integers iff gcd(c, g) = 1 for the common radical g.
    const long long g = nt::radical(std::gcd(24LL * m, 6LL * level * m));
    return progression_image(B, m, t0, g);
}

ResidueImage prohibited_residues_mock(MockFlavor flavor, long m, long t0) {
    if (m < 1) throw std::invalid_argument("sieve: m must be >= 1");
    if (t0 < 0 || t0 >= m) throw std::invalid_argument("sieve: t0 must lie in [0, m)");
    // The progression must avoid the support of the shadow, which holds when
    // the Legendre symbol below is -1 for some odd prime p | m.
    const long long arg = flavor == MockFlavor::F ? 1 - 24LL * t0 : -3LL * t0 - 2;
    bool met = false;
    for (long long p : nt::prime_factors(m)) {
        if (p == 2) continue;
        if (nt::kronecker(arg, p) == -1) { met = true; break; }
    }
    if (!met) {
        std::ostringstream msg;
        msg << "mock precondition not met: kronecker("
            << (flavor == MockFlavor::F ? "1-24*t0" : "-3*t0-2") << " = " << arg
            << ", p) != -1 for every odd prime p | m (m=" << m << ", t0=" << t0 << ")";
        throw PreconditionNotMet(msg.str());
    }
    const long B = flavor == MockFlavor::F ? -1 : 16;  // 16(d^2-1)/24 = (2/3)(d^2-1)
    return progression_image(B, m, t0, 24LL * m);
}

long exceptional_residue(const FamilySpec& family, std::uint32_t ell) {
    require_corollary_prime(ell);
    if (family.kind == FamilySpec::Kind::Frobenius && family.colors % ell == 0)
        throw PreconditionNotMet("exceptional residue undefined when ell divides k (k=" +
                                 std::to_string(family.colors) + ", ell=" + std::to_string(ell) + ")");
    // B(ell^2 - 1)/24 mod ell, exact since ell^2 = 1 (mod 24) for ell >= 5.
    const long long L = ell;
    const long long e = (L * L - 1) / 24 % L;
    return floor_mod(family.B() % L * e, L);
}

ConditionReport corollary_conditions(const FamilySpec& family, std::uint32_t ell) {
    require_corollary_prime(ell);
    ConditionReport report;
    switch (family.kind) {
        case FamilySpec::Kind::Partition:
        case FamilySpec::Kind::Eta: {
            const long long B = family.B();
            report.items.push_back(kronecker_item("kronecker(B(B+24), ell) == -1", B * (B + 24), ell));
            report.single_class_applies = report.items.back().passed;
            break;
        }
        case FamilySpec::Kind::Frobenius: {
            const long long k = family.colors;
            ConditionItem divides{"ell does not divide k", k % ell != 0,
                                  static_cast<long>(k % ell)};
            report.items.push_back(divides);
            report.items.push_back(kronecker_item("kronecker(k(k-24), ell) == -1", k * (k - 24), ell));
            report.single_class_applies = report.items[0].passed && report.items[1].passed;
            if (k % 2 != 0) {
                report.two_class_applies = report.single_class_applies;
            } else {
                const mpz_class excl = even_k_exclusion_product(family.colors);
                ConditionItem not_excluded{
                    "ell does not divide k(k^2-2k+9)(k^4-6k^3+49k^2-48k+112)",
                    mpz_fdiv_ui(excl.get_mpz_t(), ell) != 0,
                    static_cast<long>(mpz_fdiv_ui(excl.get_mpz_t(), ell))};
                report.items.push_back(not_excluded);
                report.items.push_back(kronecker_item("kronecker(k(k-48), ell) == -1", k * (k - 48), ell));
                report.items.push_back(
                    kronecker_item("kronecker((24-k)(72-k), ell) == -1", (24 - k) * (72 - k), ell));
                report.two_class_applies = not_excluded.passed && report.items[3].passed &&
                                           report.items[4].passed;
            }
            break;
        }
        case FamilySpec::Kind::MockF:
        case FamilySpec::Kind::MockOmega: {
            const bool is_f = family.kind == FamilySpec::Kind::MockF;
            long witness = -1;
            for (long i = 0; i <= 5 && witness < 0; ++i) {
                const long long arg = is_f ? 1 - 24 * i : -3 * i - 2;
                if (nt::kronecker(arg, ell) == -1) witness = i;
            }
            report.items.push_back(ConditionItem{
                is_f ? "exists i in [0,5]: kronecker(1-24i, ell) == -1"
                     : "exists i in [0,5]: kronecker(-3i-2, ell) == -1",
                witness >= 0, witness});
            report.single_class_applies = witness >= 0;
            break;
        }
        case FamilySpec::Kind::MockNu: {
            const long r = ell % 8;
            report.items.push_back(ConditionItem{"ell mod 8 in {5, 7}", r == 5 || r == 7, r});
            report.single_class_applies = report.items.back().passed;
            break;
        }
    }
    return report;
}

TwoEllAnalysis two_ell_analysis(int k, std::uint32_t ell) {
    require_corollary_prime(ell);
    TwoEllAnalysis result;
    result.conditions = corollary_conditions(FamilySpec::frobenius(k), ell);
    result.guaranteed = result.conditions.two_class_applies;
    const long twoL = 2L * static_cast<long>(ell);
    const mpz_class v = mpz_class(k) * (1 - mpz_class(ell) * ell) / 24;
    result.survivor = static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), twoL));
    result.survivor_plus_ell = (result.survivor + static_cast<long>(ell)) % twoL;
    return result;
}

bool IncongruenceCertificate::is_prohibited(long t) const {
    return std::any_of(prohibited.begin(), prohibited.end(),
                       [t](const ProhibitedClass& p) { return p.t == t; });
}

IncongruenceCertificate certify(const FamilySpec& family, const TruncatedSeries& exact_coeffs,
                                long m, std::uint32_t ell,
                                const std::optional<std::vector<long>>& pinned_classes) {
    if (m < 1) throw std::invalid_argument("certify: m must be >= 1");
    if (!nt::is_prime(ell)) throw std::invalid_argument("certify: ell must be prime");

    IncongruenceCertificate cert;
    cert.family = family;
    cert.m = m;
    cert.ell = ell;

    const bool pinned = pinned_classes.has_value();
    std::vector<long> classes;
    if (pinned) {
        classes = *pinned_classes;
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        for (long c : classes)
            if (c < 0 || c >= m)
                throw UsageError("certify: pinned class " + std::to_string(c) +
                                 " outside [0, " + std::to_string(m) + ")");
    } else {
        classes.resize(static_cast<std::size_t>(m));
        std::iota(classes.begin(), classes.end(), 0L);
    }

    const bool is_mock_nu = family.kind == FamilySpec::Kind::MockNu;
    if (is_mock_nu)
        cert.diagnostics.push_back(
            "nu has no progression sieve; only the exceptional-class condition applies");

    std::map<long, ProhibitedClass> by_t;
    for (long cls : classes) {
        const SeedScan seed = seed_scan(exact_coeffs, m, ell, cls);
        if (seed.status != SeedScan::Status::Seeded) {
            std::ostringstream msg;
            if (seed.status == SeedScan::Status::Unseedable)
                msg << "class " << cls << ": first nonzero coefficient (index " << seed.t0
                    << ") vanishes mod " << ell << "; not a valid seed";
            else
                msg << "class " << cls << ": no nonzero coefficient within truncation "
                    << exact_coeffs.trunc();
            if (pinned) throw PreconditionNotMet(msg.str());
            cert.diagnostics.push_back(msg.str());
            continue;
        }
        if (is_mock_nu) {
            cert.seeds.push_back(SeedRecord{cls, seed.t0, seed.residue});
            continue;
        }
        ResidueImage image;
        try {
            switch (family.kind) {
                case FamilySpec::Kind::MockF:
                    image = prohibited_residues_mock(MockFlavor::F, m, cls);
                    break;
                case FamilySpec::Kind::MockOmega:
                    image = prohibited_residues_mock(MockFlavor::Omega, m, cls);
                    break;
                default:
                    image = prohibited_residues_eta(family.B(), family.level(), m, cls);
                    break;
            }
        } catch (const PreconditionNotMet& err) {
            if (pinned) throw;
            cert.diagnostics.push_back("class " + std::to_string(cls) + ": " + err.what());
            continue;
        }
        cert.seeds.push_back(SeedRecord{cls, seed.t0, seed.residue});
        for (const auto& [t, d] : image)
            by_t.emplace(t, ProhibitedClass{t, d, seed.t0});
    }
    for (const auto& [t, entry] : by_t) cert.prohibited.push_back(entry);

    try {
        const long r = exceptional_residue(family, ell);
        if (m % static_cast<long>(ell) == 0) {
            for (long t = 0; t < m; ++t)
                if (t % static_cast<long>(ell) == r && !by_t.count(t))
                    cert.exceptional.push_back(t);
        }
    } catch (const PreconditionNotMet& err) {
        cert.diagnostics.push_back(std::string("exceptional class: ") + err.what());
    }
    try {
        cert.conditions = corollary_conditions(family, ell);
    } catch (const PreconditionNotMet& err) {
        cert.diagnostics.push_back(std::string("conditions: ") + err.what());
    }
    if (cert.prohibited.empty() && cert.diagnostics.empty())
        cert.diagnostics.push_back("no class produced a prohibited set");
    return cert;
}

nlohmann::ordered_json to_json(const IncongruenceCertificate& cert) {
    nlohmann::ordered_json j;
    j["family"] = cert.family.token();
    j["m"] = cert.m;
    j["ell"] = cert.ell;
    j["seeds"] = nlohmann::ordered_json::array();
    for (const SeedRecord& s : cert.seeds)
        j["seeds"].push_back({{"class", s.cls}, {"t0", s.t0}, {"a_t0_mod_ell", s.a_t0_mod_ell}});
    j["prohibited"] = nlohmann::ordered_json::array();
    for (const ProhibitedClass& p : cert.prohibited)
        j["prohibited"].push_back({{"t", p.t}, {"witness_d", p.witness_d}});
    j["exceptional"] = cert.exceptional;
    j["conditions"] = nlohmann::ordered_json::array();
    for (const ConditionItem& c : cert.conditions.items)
        j["conditions"].push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
    j["diagnostics"] = cert.diagnostics;
    return j;
}

} // namespace qincon
