#include "qincon/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qincon/acceptance.hpp"
#include "qincon/errors.hpp"
#include "qincon/family.hpp"
#include "qincon/generators.hpp"
#include "qincon/scanner.hpp"
#include "qincon/sieve.hpp"
#include "qincon/store.hpp"

namespace qincon::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

int emit(const std::string& text, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
    if (out_path.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open --out file " << out_path << '\n';
        return 1;
    }
    file << text;
    file.flush();
    if (!file) {
        err << "error: write to " << out_path << " failed\n";
        return 1;
    }
    return 0;
}

// Coefficients for the requested family, via the cache directory when given:
// a hit must match family, modulus, and depth exactly; misses are generated
// and saved under the canonical name.
TruncatedSeries load_or_generate(const FamilySpec& family, std::size_t trunc,
                                 std::optional<std::uint32_t> modulus,
                                 const std::string& cache_dir) {
    if (cache_dir.empty()) return generate(family, trunc, modulus);
    const fs::path dir(cache_dir);
    fs::create_directories(dir);
    const fs::path path = dir / cache_filename(family, modulus, static_cast<long>(trunc));
    if (fs::exists(path)) {
        const CacheEntry entry = load_cache(path);
        if (entry.family == family && entry.modulus == modulus &&
            entry.coeffs.trunc() == trunc)
            return entry.coeffs;
    }
    TruncatedSeries coeffs = generate(family, trunc, modulus);
    save_cache(CacheEntry{kCacheFormatVersion, family, modulus, coeffs}, path);
    return coeffs;
}

std::size_t scan_truncation(long m, long depth) {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(depth) +
           static_cast<std::size_t>(m) - 1;
}

std::string verdict_string(Consistency verdict) {
    switch (verdict) {
        case Consistency::Ok: return "ok";
        case Consistency::Warn: return "warn";
        case Consistency::Contradiction: return "contradiction";
    }
    return "ok";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-series coefficients, congruence sieves, and progression scans"};
    app.name("qincon");
    app.require_subcommand(1);

    std::string family_str;
    long m = 1;
    std::uint32_t ell = 5;
    long depth = 0;
    long t = 0;
    std::vector<long> pinned;
    std::string out_path;
    std::string format = "json";
    std::string cache_dir;
    std::uint64_t seed = 0xC0FFEE;

    CLI::App* expand = app.add_subcommand("expand", "emit coefficients a(0..depth) in .qc format");
    expand->add_option("--family", family_str, "family selector")->required();
    expand->add_option("--depth", depth, "last index to emit")->required()
        ->check(CLI::NonNegativeNumber);
    expand->add_option("--ell", ell, "reduce mod this prime instead of exact values");
    expand->add_option("--out", out_path, "write to this file instead of stdout");
    expand->add_option("--cache", cache_dir, "cache directory");

    CLI::App* sieve = app.add_subcommand("sieve", "certificate of prohibited residue classes");
    sieve->add_option("--family", family_str, "family selector")->required();
    sieve->add_option("--m", m, "progression modulus")->required()->check(CLI::PositiveNumber);
    sieve->add_option("--ell", ell, "congruence prime")->required();
    sieve->add_option("--t0", pinned, "pin seed classes (default: discover every class)");
    sieve->add_option("--depth", depth, "per-class seed search depth")->check(CLI::NonNegativeNumber);
    sieve->add_option("--out", out_path, "write to this file instead of stdout");

    CLI::App* scan_cmd = app.add_subcommand("scan", "witness/candidate status of every class");
    scan_cmd->add_option("--family", family_str, "family selector")->required();
    scan_cmd->add_option("--m", m, "progression modulus")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--ell", ell, "congruence prime")->required();
    scan_cmd->add_option("--depth", depth, "scan n = 0..depth per class")->required()
        ->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--format", format, "json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    scan_cmd->add_option("--out", out_path, "write to this file instead of stdout");
    scan_cmd->add_option("--cache", cache_dir, "cache directory");

    CLI::App* verify = app.add_subcommand("verify", "check a(mn+t) = 0 mod ell for n <= depth");
    verify->add_option("--family", family_str, "family selector")->required();
    verify->add_option("--m", m, "progression modulus")->required()->check(CLI::PositiveNumber);
    verify->add_option("--t", t, "residue class to verify")->required()
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--ell", ell, "congruence prime")->required();
    verify->add_option("--depth", depth, "verify n = 0..depth")->required()
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--out", out_path, "write to this file instead of stdout");
    verify->add_option("--cache", cache_dir, "cache directory");

    CLI::App* certify_cmd =
        app.add_subcommand("certify", "sieve + scan + reconcile in one report");
    certify_cmd->add_option("--family", family_str, "family selector")->required();
    certify_cmd->add_option("--m", m, "progression modulus")->required()
        ->check(CLI::PositiveNumber);
    certify_cmd->add_option("--ell", ell, "congruence prime")->required();
    certify_cmd->add_option("--t0", pinned, "pin seed classes (default: discover every class)");
    certify_cmd->add_option("--depth", depth, "scan depth per class")
        ->check(CLI::NonNegativeNumber);
    certify_cmd->add_option("--out", out_path, "write to this file instead of stdout");

    CLI::App* selftest = app.add_subcommand("selftest", "run the full regression suite");
    selftest->add_option("--seed", seed, "seed for randomized property checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(expand)) {
            const FamilySpec family = FamilySpec::parse(family_str);
            std::optional<std::uint32_t> modulus;
            if (expand->count("--ell") > 0) modulus = ell;
            const TruncatedSeries coeffs =
                load_or_generate(family, static_cast<std::size_t>(depth), modulus, cache_dir);
            return emit(to_qc_text(CacheEntry{kCacheFormatVersion, family, modulus, coeffs}),
                        out_path, out, err);
        }

        if (app.got_subcommand(sieve)) {
            const FamilySpec family = FamilySpec::parse(family_str);
            if (sieve->count("--depth") == 0) depth = 16;
            const TruncatedSeries coeffs =
                generate(family, scan_truncation(m, depth), std::nullopt);
            std::optional<std::vector<long>> pins;
            if (!pinned.empty()) pins = pinned;
            const IncongruenceCertificate cert = certify(family, coeffs, m, ell, pins);
            return emit(to_json(cert).dump(2) + "\n", out_path, out, err);
        }

        if (app.got_subcommand(scan_cmd)) {
            const FamilySpec family = FamilySpec::parse(family_str);
            const TruncatedSeries coeffs =
                load_or_generate(family, scan_truncation(m, depth), ell, cache_dir);
            const ScanReport report = scan(family, coeffs, m, ell, depth);
            const std::string text =
                format == "tsv" ? to_tsv(report) : to_json(report).dump(2) + "\n";
            return emit(text, out_path, out, err);
        }

        if (app.got_subcommand(verify)) {
            const FamilySpec family = FamilySpec::parse(family_str);
            if (t >= m) throw UsageError("--t must lie in [0, --m)");
            const TruncatedSeries coeffs =
                load_or_generate(family, scan_truncation(m, depth), ell, cache_dir);
            const VerifyResult result = verify_congruence(coeffs, m, t, ell, depth);
            ordered_json j;
            j["family"] = family.token();
            j["m"] = m;
            j["t"] = t;
            j["ell"] = ell;
            j["depth"] = depth;
            j["passed"] = result.passed;
            if (result.violation_n) j["violation_n"] = *result.violation_n;
            const int emit_rc = emit(j.dump(2) + "\n", out_path, out, err);
            if (emit_rc != 0) return emit_rc;
            if (!result.passed) {
                err << "verification failed: a(" << m << "*" << *result.violation_n << "+" << t
                    << ") != 0 mod " << ell << '\n';
                return 2;
            }
            return 0;
        }

        if (app.got_subcommand(certify_cmd)) {
            const FamilySpec family = FamilySpec::parse(family_str);
            if (certify_cmd->count("--depth") == 0) depth = 50;
            const TruncatedSeries coeffs =
                generate(family, scan_truncation(m, depth), std::nullopt);
            std::optional<std::vector<long>> pins;
            if (!pinned.empty()) pins = pinned;
            const IncongruenceCertificate cert = certify(family, coeffs, m, ell, pins);
            const ScanReport report = scan(family, coeffs, m, ell, depth);
            const ReconcileResult rec = reconcile(report, cert);
            ordered_json j;
            j["certificate"] = to_json(cert);
            j["scan"] = to_json(report);
            j["reconcile"] = {{"verdict", verdict_string(rec.verdict)}, {"notes", rec.notes}};
            const int emit_rc = emit(j.dump(2) + "\n", out_path, out, err);
            if (emit_rc != 0) return emit_rc;
            if (rec.verdict == Consistency::Contradiction) {
                err << "reconciliation found a contradiction\n";
                return 2;
            }
            return 0;
        }

        if (app.got_subcommand(selftest)) {
            auto results = acceptance::run_core_criteria();
            results.push_back(acceptance::store_roundtrip_check(seed));
            acceptance::print_results(results, out);
            return acceptance::all_passed(results) ? 0 : 2;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionNotMet& e) {
        err << "precondition not met: " << e.what() << '\n';
        return 3;
    } catch (const StoreError& e) {
        err << "store error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace qincon::cli
