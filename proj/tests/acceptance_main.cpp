// Standalone gate binary: runs the nine computational acceptance criteria
// from the library, then a tenth covering storage robustness, CLI
// determinism, and the packaged selftest.  Prints one PASS/FAIL line per
// criterion and exits with the number of failures.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qincon/acceptance.hpp"
#include "qincon/cli.hpp"
#include "qincon/errors.hpp"
#include "qincon/family.hpp"
#include "qincon/generators.hpp"
#include "qincon/store.hpp"

namespace {

using namespace qincon;
namespace fs = std::filesystem;

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

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void criterion10_body(Checker& c) {
    // (a) seeded random round-trips through the coefficient store
    const acceptance::CriterionResult rt = acceptance::store_roundtrip_check(0xC0FFEEULL);
    c.expect(rt.passed, "store round-trip: " + rt.detail);

    // (b) crash-safety and version discipline of the on-disk format
    const fs::path dir = fs::temp_directory_path() / "qincon-acceptance-10";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const CacheEntry entry{kCacheFormatVersion, FamilySpec::partition(), std::nullopt,
                           partition_coeffs(8)};
    const fs::path path = dir / cache_filename(FamilySpec::partition(), std::nullopt, 8);
    save_cache(entry, path);
    c.expect(!fs::exists(path.string() + ".tmp"), "temp file left behind after save");
    const std::string original = slurp(path);

    {
        // simulate a writer that died before its rename: readers never see it
        std::ofstream tmp(path.string() + ".tmp", std::ios::binary);
        tmp << "interrupted write";
    }
    bool load_ok = true;
    try {
        const CacheEntry again = load_cache(path);
        load_ok = again.depth() == 8 && again.coeffs.exact_at(8) == 22;
    } catch (const std::exception&) {
        load_ok = false;
    }
    c.expect(load_ok, "stale temp file disturbed a reader");
    save_cache(entry, path);
    c.expect(slurp(path) == original, "rewrite changed the stored bytes");

    const fs::path newer = dir / "newer.qc";
    {
        std::ofstream out(newer, std::ios::binary);
        out << "{\"version\":99,\"family\":\"p\",\"params\":{},\"modulus\":null,\"depth\":0}\n1\n";
    }
    bool refused_load = false, refused_save = false;
    try {
        load_cache(newer);
    } catch (const StoreError&) {
        refused_load = true;
    }
    try {
        save_cache(entry, newer);
    } catch (const StoreError&) {
        refused_save = true;
    }
    c.expect(refused_load, "version-99 file was not refused on load");
    c.expect(refused_save, "version-99 file was not protected from overwrite");
    c.expect(slurp(newer).find("\"version\":99") != std::string::npos,
             "refused overwrite still changed the file");
    std::error_code ec;
    fs::remove_all(dir, ec);

    // (c) repeated CLI invocations are byte-for-byte identical
    const std::vector<std::vector<std::string>> invocations = {
        {"expand", "--family", "mock:f", "--depth", "200"},
        {"expand", "--family", "eta:1^2,2^-1@N=8", "--depth", "100", "--ell", "13"},
        {"certify", "--family", "cphi:3", "--m", "10", "--ell", "5", "--depth", "30"},
        {"scan", "--family", "mock:omega", "--m", "40", "--ell", "5", "--depth", "25",
         "--format", "tsv"},
    };
    for (const auto& args : invocations) {
        std::ostringstream out1, err1, out2, err2;
        const int rc1 = cli::run(args, out1, err1);
        const int rc2 = cli::run(args, out2, err2);
        c.expect(rc1 == rc2 && out1.str() == out2.str(),
                 "non-deterministic output for subcommand " + args.front());
        c.expect(rc1 == 0, "subcommand " + args.front() + " exited " + std::to_string(rc1));
    }

    // (d) the packaged selftest agrees end to end
    std::ostringstream out, err;
    const int rc = cli::run({"selftest"}, out, err);
    c.expect(rc == 0, "selftest exited " + std::to_string(rc) + "\n" + out.str());
}

acceptance::CriterionResult criterion10() {
    const auto start = std::chrono::steady_clock::now();
    Checker c;
    try {
        criterion10_body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("unexpected exception: ") + e.what());
    }
    acceptance::CriterionResult r;
    r.id = 10;
    r.name = "store robustness, CLI determinism, and in-process selftest";
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = c.ok;
    r.detail = c.ok ? std::to_string(c.checks) + " checks" : c.first_failure;
    return r;
}

} // namespace

int main() {
    std::vector<acceptance::CriterionResult> results = acceptance::run_core_criteria();
    results.push_back(criterion10());
    acceptance::print_results(results, std::cout);

    int failures = 0;
    for (const auto& r : results)
        if (!r.passed) ++failures;
    std::cout << (results.size() - static_cast<std::size_t>(failures)) << " of " << results.size()
              << " criteria passed\n";
    return failures;
}
