#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "qincon/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = qincon::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() / ("qincon-cli-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter++));
        fs::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int counter;
};

int ScratchDir::counter = 0;

} // namespace

TEST_CASE("expand emits qc text on stdout") {
    const RunResult r = run({"expand", "--family", "p", "--depth", "9"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"version\":1,\"family\":\"p\",\"params\":{},\"modulus\":null,\"depth\":9}\n"
          "1\n1\n2\n3\n5\n7\n11\n15\n22\n30\n");
    CHECK(r.err.empty());

    const RunResult m = run({"expand", "--family", "p", "--depth", "9", "--ell", "5"});
    CHECK(m.code == 0);
    CHECK(m.out ==
          "{\"version\":1,\"family\":\"p\",\"params\":{},\"modulus\":5,\"depth\":9}\n"
          "1\n1\n2\n3\n0\n2\n1\n0\n2\n0\n");
}

TEST_CASE("expand honors --out and --cache") {
    const ScratchDir dir;
    const fs::path out_file = dir.path / "partitions.qc";
    const fs::path cache = dir.path / "cache";

    const RunResult direct = run({"expand", "--family", "p", "--depth", "9"});
    const RunResult first = run({"expand", "--family", "p", "--depth", "9", "--out",
                                 out_file.string(), "--cache", cache.string()});
    CHECK(first.code == 0);
    CHECK(first.out.empty());
    CHECK(fs::exists(out_file));
    CHECK(fs::exists(cache / "p-mexact-d9.qc"));

    std::ifstream in(out_file, std::ios::binary);
    const std::string written{std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>()};
    CHECK(written == direct.out);

    // a second invocation served from the cache is byte-identical
    const RunResult second =
        run({"expand", "--family", "p", "--depth", "9", "--cache", cache.string()});
    CHECK(second.code == 0);
    CHECK(second.out == direct.out);
}

TEST_CASE("scan emits json or tsv") {
    const RunResult j = run({"scan", "--family", "p", "--m", "5", "--ell", "5", "--depth", "20"});
    CHECK(j.code == 0);
    const auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed.at("family") == "p");
    CHECK(parsed.at("statuses").size() == 5);
    CHECK(parsed.at("statuses")[4].at("status") == "candidate");

    const RunResult t = run({"scan", "--family", "p", "--m", "5", "--ell", "5", "--depth", "20",
                             "--format", "tsv"});
    CHECK(t.code == 0);
    CHECK(t.out.substr(0, 20) == "t\tstatus\twitness_n\n0");

    const RunResult bad = run({"scan", "--family", "p", "--m", "5", "--ell", "5", "--depth", "20",
                               "--format", "xml"});
    CHECK(bad.code == 1);
}

TEST_CASE("verify exits 0 on success and 2 on violation") {
    const RunResult good =
        run({"verify", "--family", "p", "--m", "5", "--t", "4", "--ell", "5", "--depth", "100"});
    CHECK(good.code == 0);
    CHECK(nlohmann::json::parse(good.out).at("passed") == true);

    const RunResult bad =
        run({"verify", "--family", "p", "--m", "5", "--t", "0", "--ell", "5", "--depth", "100"});
    CHECK(bad.code == 2);
    const auto parsed = nlohmann::json::parse(bad.out);
    CHECK(parsed.at("passed") == false);
    CHECK(parsed.at("violation_n") == 0);
    CHECK(bad.err.find("verification failed") != std::string::npos);

    const RunResult oob =
        run({"verify", "--family", "p", "--m", "5", "--t", "5", "--ell", "5", "--depth", "10"});
    CHECK(oob.code == 1);
}

TEST_CASE("sieve emits a certificate and maps preconditions to exit 3") {
    const RunResult r = run({"sieve", "--family", "p", "--m", "5", "--ell", "5"});
    CHECK(r.code == 0);
    const auto cert = nlohmann::json::parse(r.out);
    CHECK(cert.at("prohibited").size() == 4);
    CHECK(cert.at("exceptional") == nlohmann::json::array({4}));

    const RunResult pinned =
        run({"sieve", "--family", "mock:f", "--m", "5", "--ell", "5", "--t0", "0"});
    CHECK(pinned.code == 3);
    CHECK(pinned.err.find("precondition not met") != std::string::npos);

    const RunResult oob = run({"sieve", "--family", "p", "--m", "5", "--ell", "5", "--t0", "7"});
    CHECK(oob.code == 1);
}

TEST_CASE("certify bundles certificate, scan, and reconciliation") {
    const RunResult r = run({"certify", "--family", "p", "--m", "5", "--ell", "5", "--depth",
                             "40"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("certificate").at("prohibited").size() == 4);
    CHECK(j.at("scan").at("statuses").size() == 5);
    CHECK(j.at("reconcile").at("verdict") == "ok");
}

TEST_CASE("argument errors exit 1") {
    CHECK(run({}).code == 1);                                        // no subcommand
    CHECK(run({"frobnicate"}).code == 1);                            // unknown subcommand
    CHECK(run({"expand", "--family", "p"}).code == 1);               // missing --depth
    CHECK(run({"expand", "--family", "zeta", "--depth", "3"}).code == 1); // bad selector
    CHECK(run({"expand", "--family", "p", "--depth", "-2"}).code == 1);
    CHECK(run({"scan", "--family", "p", "--m", "0", "--ell", "5", "--depth", "1"}).code == 1);
    CHECK(run({"scan", "--family", "p", "--m", "2", "--ell", "6", "--depth", "1"}).code == 1);
}

TEST_CASE("--help succeeds") {
    const RunResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("expand") != std::string::npos);
    CHECK(r.out.find("sieve") != std::string::npos);
}

TEST_CASE("identical invocations produce identical bytes") {
    for (const std::vector<std::string> args :
         {std::vector<std::string>{"expand", "--family", "mock:nu", "--depth", "64"},
          std::vector<std::string>{"sieve", "--family", "cphi:3", "--m", "10", "--ell", "5"},
          std::vector<std::string>{"scan", "--family", "mock:omega", "--m", "8", "--ell", "3",
                                   "--depth", "12", "--format", "tsv"}}) {
        const RunResult a = run(args);
        const RunResult b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
