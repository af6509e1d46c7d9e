#include "qincon/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "qincon/cli.hpp"
#include "qincon/errors.hpp"
#include "qincon/family.hpp"
#include "qincon/generators.hpp"
#include "qincon/numtheory.hpp"
#include "qincon/scanner.hpp"
#include "qincon/sieve.hpp"
#include "qincon/store.hpp"

namespace qincon::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
    bool ok = true;
    std::string first_failure;
    int checks = 0;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Run one criterion body under a timer, converting exceptions and budget
// overruns into FAIL lines instead of aborting the whole run.
CriterionResult run_criterion(int id, const std::string& name, double budget_seconds,
                              const std::function<void(Checker&)>& body) {
    const auto start = Clock::now();
    Checker c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("unexpected exception: ") + e.what());
    }
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.seconds = seconds_since(start);
    if (budget_seconds > 0 && r.seconds >= budget_seconds)
        c.expect(false, "runtime " + std::to_string(r.seconds) + "s exceeded budget " +
                            std::to_string(budget_seconds) + "s");
    r.passed = c.ok;
    r.detail = c.ok ? std::to_string(c.checks) + " checks" : c.first_failure;
    return r;
}

std::set<long> keys(const ResidueImage& image) {
    std::set<long> out;
    for (const auto& [t, d] : image) out.insert(t);
    return out;
}

std::set<long> prohibited_set(const IncongruenceCertificate& cert) {
    std::set<long> out;
    for (const ProhibitedClass& p : cert.prohibited) out.insert(p.t);
    return out;
}

std::string show(const std::set<long>& s) {
    std::string out = "{";
    for (long v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
    return out + "}";
}

// The sieve map itself, for revalidating recorded witnesses.
long image_point(long B, long m, long long d, long t0) {
    const long long M24 = 24LL * m;
    const long long s = (d % M24) * (d % M24) % M24;
    const long long v = t0 * (s % m) + B * ((s - 1) / 24);
    return static_cast<long>(((v % m) + m) % m);
}

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.trunc() != b.trunc() || a.offset24() != b.offset24() || a.modulus() != b.modulus())
        return false;
    for (std::size_t n = 0; n <= a.trunc(); ++n) {
        if (a.modular()) {
            if (a.residue_at(n) != b.residue_at(n)) return false;
        } else if (a.exact_at(n) != b.exact_at(n)) {
            return false;
        }
    }
    return true;
}

std::vector<long> primes_in(long lo, long hi) {
    std::vector<long> out;
    for (long long p : nt::primes_below(hi + 1))
        if (p >= lo) out.push_back(static_cast<long>(p));
    return out;
}

// --- criterion 1: partition sieve, m = ell = 5 -----------------------------

void criterion1(Checker& c) {
    c.expect(keys(prohibited_residues_eta(-1, 1, 5, 0)) == std::set<long>{0, 3},
             "seed t0=0 image != {0,3}");
    c.expect(keys(prohibited_residues_eta(-1, 1, 5, 1)) == std::set<long>{1, 2},
             "seed t0=1 image != {1,2}");

    const TruncatedSeries p = partition_coeffs(64);
    const FamilySpec fam = FamilySpec::partition();
    for (const auto& cert :
         {certify(fam, p, 5, 5), certify(fam, p, 5, 5, std::vector<long>{0, 1})}) {
        c.expect(prohibited_set(cert) == std::set<long>{0, 1, 2, 3},
                 "prohibited " + show(prohibited_set(cert)) + " != {0,1,2,3}");
        c.expect(cert.exceptional == std::vector<long>{4}, "exceptional != {4}");
        c.expect(cert.conditions.single_class_applies, "kronecker(-23, 5) condition should pass");
        for (const ProhibitedClass& pc : cert.prohibited)
            c.expect(image_point(-1, 5, pc.witness_d, pc.seed_t0 % 5) == pc.t,
                     "witness d=" + std::to_string(pc.witness_d) +
                         " does not map onto t=" + std::to_string(pc.t));
    }
}

// --- criterion 2: 3-colored Frobenius sieve, m = 10, ell = 5 ----------------

void criterion2(Checker& c) {
    const TruncatedSeries cphi3 = frobenius_coeffs(3, 64);
    const IncongruenceCertificate cert =
        certify(FamilySpec::frobenius(3), cphi3, 10, 5, std::vector<long>{0, 1});
    c.expect(prohibited_set(cert) == std::set<long>{0, 1, 3, 4, 5, 6, 8, 9},
             "prohibited " + show(prohibited_set(cert)) + " != {0,1,3,4,5,6,8,9}");
    c.expect(cert.exceptional == std::vector<long>({2, 7}), "exceptional != {2,7}");

    const TwoEllAnalysis two = two_ell_analysis(3, 5);
    c.expect(two.survivor == 7, "survivor != 7");
    c.expect(two.survivor_plus_ell == 2, "survivor + ell != 2");
    c.expect(two.guaranteed, "odd-k conditions should pass for k=3, ell=5");
}

// --- criterion 3: corollary condition screens -------------------------------

void criterion3(Checker& c) {
    for (long ell : primes_in(5, 99)) {
        const bool applies =
            corollary_conditions(FamilySpec::frobenius(3), static_cast<std::uint32_t>(ell))
                .single_class_applies;
        const long r = ell % 7;
        const bool expected = r == 3 || r == 5 || r == 6;
        c.expect(applies == expected,
                 "k=3, ell=" + std::to_string(ell) + ": applies=" + std::to_string(applies) +
                     " but ell mod 7 = " + std::to_string(r));
    }

    const std::string excl_name = "ell does not divide k(k^2-2k+9)(k^4-6k^3+49k^2-48k+112)";
    for (const auto& [k, expected] :
         std::vector<std::pair<int, std::set<long>>>{{4, {17}}, {6, {11, 397}}}) {
        std::set<long> flagged;
        for (long ell : primes_in(5, 500)) {
            const ConditionReport rep =
                corollary_conditions(FamilySpec::frobenius(k), static_cast<std::uint32_t>(ell));
            const auto it =
                std::find_if(rep.items.begin(), rep.items.end(),
                             [&](const ConditionItem& i) { return i.name == excl_name; });
            c.expect(it != rep.items.end(), "even-k exclusion item missing");
            if (it != rep.items.end() && !it->passed) flagged.insert(ell);
        }
        c.expect(flagged == expected, "k=" + std::to_string(k) + " exclusion flagged " +
                                          show(flagged) + " != " + show(expected));
    }
}

// --- criterion 4: named congruence verifications ----------------------------

void criterion4(Checker& c) {
    for (const auto& [m, t, ell] :
         std::vector<std::array<long, 3>>{{5, 4, 5}, {7, 5, 7}, {11, 6, 11}}) {
        const std::size_t trunc = static_cast<std::size_t>(m) * 2000 + m - 1;
        const TruncatedSeries p = partition_coeffs(trunc, static_cast<std::uint32_t>(ell));
        c.expect(verify_congruence(p, m, t, static_cast<std::uint32_t>(ell), 2000).passed,
                 "p(" + std::to_string(m) + "n+" + std::to_string(t) + ") mod " +
                     std::to_string(ell) + " violated");
    }

    const TruncatedSeries cphi2_mod2 = frobenius_coeffs(2, 2 * 2000 + 1, 2);
    c.expect(verify_congruence(cphi2_mod2, 2, 1, 2, 2000).passed, "cphi_2(2n+1) mod 2 violated");
    const TruncatedSeries cphi2_mod5 = frobenius_coeffs(2, 5 * 2000 + 4, 5);
    c.expect(verify_congruence(cphi2_mod5, 5, 3, 5, 2000).passed, "cphi_2(5n+3) mod 5 violated");

    for (int k : {6, 11}) {
        const TruncatedSeries cphik =
            frobenius_coeffs(k, 5 * 200 + 4, 5, ThetaStrategy::ConstantTerm);
        c.expect(verify_congruence(cphik, 5, 4, 5, 200).passed,
                 "cphi_" + std::to_string(k) + "(5n+4) mod 5 violated");
    }
}

// --- criterion 5: the cphi_5 mod 13 congruence family ------------------------

void criterion5(Checker& c) {
    const long depth = 60;
    const std::size_t trunc = 325 * static_cast<std::size_t>(depth) + 324;
    const TruncatedSeries cphi5 = frobenius_coeffs(5, trunc, 13);
    for (long t : {15L, 25L, 50L, 75L, 90L, 100L, 115L, 140L, 165L, 175L, 240L, 275L}) {
        const VerifyResult v = verify_congruence(cphi5, 325, t, 13, depth);
        std::string msg = "cphi_5(325n+" + std::to_string(t) + ") mod 13 violated";
        if (v.violation_n) msg += " at n=" + std::to_string(*v.violation_n);
        c.expect(v.passed, msg);
    }
}

// --- criterion 6: omega congruences and the mod-5 residue table -------------

void criterion6(Checker& c) {
    const TruncatedSeries omega = mock_omega_coeffs(40 * 200 + 39, 5);
    c.expect(verify_congruence(omega, 40, 27, 5, 200).passed, "a_omega(40n+27) mod 5 violated");
    c.expect(verify_congruence(omega, 40, 35, 5, 200).passed, "a_omega(40n+35) mod 5 violated");

    const TruncatedSeries head = mock_omega_coeffs(39);
    std::set<long> divisible;
    for (long t = 0; t <= 39; ++t)
        if (head.mod_at(static_cast<std::size_t>(t), 5) == 0) divisible.insert(t);
    c.expect(divisible == std::set<long>{6, 20, 23, 24, 27, 35},
             "{t <= 39 : 5 | a_omega(t)} = " + show(divisible) + " != {6,20,23,24,27,35}");
}

// --- criterion 7: mock sieve example and precondition failure ---------------

void criterion7(Checker& c) {
    const ResidueImage image = prohibited_residues_mock(MockFlavor::Omega, 40, 12);
    c.expect(image.count(20) == 1, "Omega m=40 t0=12 image misses t=20");
    if (image.count(20)) c.expect(image.at(20) == 7, "witness for t=20 is not d=7");

    bool threw = false;
    try {
        prohibited_residues_mock(MockFlavor::F, 5, 0);
    } catch (const PreconditionNotMet&) {
        threw = true;
    }
    c.expect(threw, "F m=5 t0=0 should fail its Legendre precondition");

    std::ostringstream out, err;
    const int rc = cli::run({"sieve", "--family", "mock:f", "--m", "5", "--ell", "5", "--t0", "0"},
                            out, err);
    c.expect(rc == 3, "CLI pinned mock:f sieve exited " + std::to_string(rc) + ", want 3");
}

// --- criterion 8: nu suite ---------------------------------------------------

void criterion8(Checker& c) {
    const TruncatedSeries defining = mock_nu_coeffs(2000, std::nullopt, NuMethod::Defining);
    const TruncatedSeries identity = mock_nu_coeffs(2000, std::nullopt, NuMethod::Identity);
    c.expect(series_equal(defining, identity),
             "nu defining sum and product identity disagree within q^2000");

    const TruncatedSeries nu5 = mock_nu_coeffs(10 * 500 + 9, 5, NuMethod::Defining);
    c.expect(verify_congruence(nu5, 10, 8, 5, 500).passed, "a_nu(10n+8) mod 5 violated");

    const std::map<std::uint32_t, long> expected{{5, 3}, {7, 2}, {13, 4}, {23, 15}};
    for (const auto& [ell, want] : expected) {
        const long got = exceptional_residue(FamilySpec::mock_nu(), ell);
        c.expect(got == want, "nu exceptional residue mod " + std::to_string(ell) + " = " +
                                  std::to_string(got) + ", want " + std::to_string(want));
    }
}

// --- criterion 9: property sweeps -------------------------------------------

void property_theta_dual(Checker& c) {
    for (int k = 2; k <= 6; ++k) {
        const TruncatedSeries lat =
            frobenius_theta(k, 300, std::nullopt, ThetaStrategy::LatticeEnum);
        const TruncatedSeries ct =
            frobenius_theta(k, 300, std::nullopt, ThetaStrategy::ConstantTerm);
        c.expect(series_equal(lat, ct), "theta strategies disagree at k=" + std::to_string(k));
    }
}

void property_cphi1_is_partition(Checker& c) {
    const TruncatedSeries cphi1 = frobenius_coeffs(1, 2000);
    const TruncatedSeries p = partition_coeffs(2000);
    c.expect(series_equal(cphi1, p), "cphi_1 != p within q^2000");
}

void property_exact_vs_modular(Checker& c) {
    const std::vector<FamilySpec> families = {
        FamilySpec::partition(),
        FamilySpec::frobenius(3),
        FamilySpec::frobenius(4),
        FamilySpec::mock_f(),
        FamilySpec::mock_omega(),
        FamilySpec::mock_nu(),
        FamilySpec::eta({{1, 2}, {2, -1}, {4, 1}}, 8),
    };
    for (const FamilySpec& fam : families) {
        const TruncatedSeries exact = generate(fam, 1000, std::nullopt);
        for (std::uint32_t ell : {5u, 13u}) {
            const TruncatedSeries direct = generate(fam, 1000, ell);
            c.expect(series_equal(reduce_mod(exact, ell), direct),
                     fam.token() + ": exact-then-reduce != modular generation mod " +
                         std::to_string(ell));
        }
    }
}

void property_square_offsets(Checker& c) {
    bool all = true;
    for (long d = 1; d <= 10000; ++d) {
        if (std::gcd(d, 6L) != 1) continue;
        const long long v = static_cast<long long>(d) * d - 1;
        if (v % 24 != 0 || v % 3 != 0) all = false;
    }
    c.expect(all, "24 | d^2-1 or 3 | d^2-1 failed for some d coprime to 6");
}

std::set<long> brute_force_image(long B, long m, long t0, long long coprime_to) {
    const std::vector<long long> ps = nt::prime_factors(coprime_to);
    std::set<long> out;
    for (long long d = 1; d <= 1000000; ++d) {
        bool admissible = true;
        for (long long p : ps)
            if (d % p == 0) {
                admissible = false;
                break;
            }
        if (!admissible) continue;
        const long long v = t0 * d % m * d + B * ((d * d - 1) / 24);
        out.insert(static_cast<long>(((v % m) + m) % m));
    }
    return out;
}

void property_d_range(Checker& c) {
    const std::vector<std::pair<long, long>> eta_BN = {{-1, 1}, {-3, 3}, {16, 10}, {-4, 8}};
    for (const auto& [B, N] : eta_BN) {
        for (long m : {1L, 2L, 3L, 5L, 8L, 10L, 24L, 40L}) {
            const std::set<long> seeds = {0, 1 % m, m - 1};
            for (long t0 : seeds) {
                const std::set<long> fast = keys(prohibited_residues_eta(B, N, m, t0));
                const std::set<long> brute = brute_force_image(B, m, t0, 6LL * N * m);
                c.expect(fast == brute, "eta d-range mismatch at B=" + std::to_string(B) +
                                            " N=" + std::to_string(N) + " m=" + std::to_string(m) +
                                            " t0=" + std::to_string(t0));
            }
        }
    }
    const std::vector<std::tuple<MockFlavor, long, long, long>> mocks = {
        {MockFlavor::Omega, 40, 12, 16},
        {MockFlavor::Omega, 20, 12, 16},
        {MockFlavor::F, 5, 2, -1},
        {MockFlavor::F, 35, 4, -1},
    };
    for (const auto& [flavor, m, t0, B] : mocks) {
        const std::set<long> fast = keys(prohibited_residues_mock(flavor, m, t0));
        const std::set<long> brute = brute_force_image(B, m, t0, 24LL * m);
        c.expect(fast == brute, "mock d-range mismatch at m=" + std::to_string(m) +
                                    " t0=" + std::to_string(t0));
    }
}

void property_qr_coherence(Checker& c) {
    const std::vector<std::pair<long, long>> BN = {{-1, 1}, {-3, 3}};
    for (const auto& [B, N] : BN) {
        for (long ell : {5L, 7L, 11L, 13L}) {
            for (long t0 = 0; t0 < ell; ++t0) {
                if (((24 * t0 + B) % ell + ell) % ell == 0) continue;
                const ResidueImage image = prohibited_residues_eta(B, N, ell, t0);
                c.expect(static_cast<long>(image.size()) == (ell - 1) / 2,
                         "image size != (ell-1)/2 at B=" + std::to_string(B) +
                             " ell=" + std::to_string(ell) + " t0=" + std::to_string(t0));
                const int ref = nt::kronecker(24 * t0 + B, ell);
                bool coherent = true;
                for (const auto& [t, d] : image)
                    if (nt::kronecker(24 * t + B, ell) != ref) coherent = false;
                c.expect(coherent, "kronecker(24t+B, ell) not constant on the image at ell=" +
                                       std::to_string(ell) + " t0=" + std::to_string(t0));
            }
        }
    }
}

void criterion9(Checker& c) {
    property_theta_dual(c);
    property_cphi1_is_partition(c);
    property_exact_vs_modular(c);
    property_square_offsets(c);
    property_d_range(c);
    property_qr_coherence(c);
}

void roundtrip_body(Checker& c, std::uint64_t seed) {
    namespace fs = std::filesystem;
    std::mt19937_64 rng(seed);
    const fs::path dir = fs::temp_directory_path() / ("qincon-roundtrip-" + std::to_string(rng()));
    fs::create_directories(dir);

    const std::vector<FamilySpec> families = {
        FamilySpec::partition(),      FamilySpec::frobenius(2), FamilySpec::frobenius(7),
        FamilySpec::mock_f(),         FamilySpec::mock_omega(), FamilySpec::mock_nu(),
        FamilySpec::eta({{1, 1}, {2, -2}, {4, 1}}, 8),
    };
    const std::vector<std::optional<std::uint32_t>> modes = {std::nullopt, 2u, 5u, 97u};
    for (int round = 0; round < 12; ++round) {
        const FamilySpec& fam = families[rng() % families.size()];
        const std::optional<std::uint32_t> modulus = modes[rng() % modes.size()];
        const std::size_t depth = rng() % 120;
        const CacheEntry entry{kCacheFormatVersion, fam, modulus, generate(fam, depth, modulus)};
        const fs::path path = dir / cache_filename(fam, modulus, static_cast<long>(depth));
        save_cache(entry, path);
        const CacheEntry reloaded = load_cache(path);
        c.expect(reloaded.family == fam && reloaded.modulus == modulus &&
                     series_equal(reloaded.coeffs, entry.coeffs),
                 "round-trip mismatch for " + path.filename().string());
    }

    // Negative coefficients survive the text format.
    const TruncatedSeries f = mock_f_coeffs(8);
    c.expect(f.exact_at(2) == -2, "a_f(2) != -2");
    const CacheEntry entry{kCacheFormatVersion, FamilySpec::mock_f(), std::nullopt, f};
    const fs::path path = dir / cache_filename(FamilySpec::mock_f(), std::nullopt, 8);
    save_cache(entry, path);
    c.expect(load_cache(path).coeffs.exact_at(2) == -2, "sign lost in round-trip");

    std::error_code ec;
    fs::remove_all(dir, ec);
}

} // namespace

std::vector<CriterionResult> run_core_criteria() {
    struct Def {
        int id;
        const char* name;
        double budget;
        void (*body)(Checker&);
    };
    const std::vector<Def> defs = {
        {1, "partition sieve reproduces the m=5 incongruences", 1.0, criterion1},
        {2, "3-colored Frobenius sieve reproduces the m=10 incongruences", 1.0, criterion2},
        {3, "corollary screens (k=3 mod-7 rule; k=4,6 exclusions)", 0, criterion3},
        {4, "named congruences verify to depth 2000", 120.0, criterion4},
        {5, "cphi_5(325n+t) = 0 mod 13 for the twelve classes, n <= 60", 300.0, criterion5},
        {6, "omega congruences verify; mod-5 table of a_omega(0..39)", 0, criterion6},
        {7, "mock sieve witness at t=20; f precondition fails with exit 3", 0, criterion7},
        {8, "nu: defining = identity to q^2000; 10n+8 mod 5; exceptional residues", 0, criterion8},
        {9, "property sweeps (theta duality, cphi_1=p, mod commutation, d-range, QR)", 0,
         criterion9},
    };
    std::vector<CriterionResult> results;
    results.reserve(defs.size());
    for (const Def& d : defs) results.push_back(run_criterion(d.id, d.name, d.budget, d.body));
    return results;
}

CriterionResult store_roundtrip_check(std::uint64_t seed) {
    return run_criterion(0, "store round-trip (seed " + std::to_string(seed) + ")", 0,
                         [seed](Checker& c) { roundtrip_body(c, seed); });
}

void print_results(const std::vector<CriterionResult>& results, std::ostream& out) {
    for (const CriterionResult& r : results) {
        out << "criterion " << r.id << " (" << r.name << "): " << (r.passed ? "PASS" : "FAIL")
            << " in " << std::fixed << std::setprecision(2) << r.seconds << "s";
        if (!r.detail.empty()) out << " - " << r.detail;
        out << '\n';
    }
    out.flush();
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

} // namespace qincon::acceptance
