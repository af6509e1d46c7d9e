#include <doctest.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "qincon/family.hpp"
#include "qincon/generators.hpp"
#include "qincon/scanner.hpp"
#include "qincon/sieve.hpp"

using namespace qincon;

TEST_CASE("scan separates witnessed classes from candidates") {
    const TruncatedSeries p = partition_coeffs(5 * 50 + 4, 5);
    const ScanReport report = scan(FamilySpec::partition(), p, 5, 5, 50);
    REQUIRE(report.statuses.size() == 5);
    for (long t = 0; t < 5; ++t) CHECK(report.statuses[static_cast<std::size_t>(t)].t == t);

    // p(0), p(1), p(2), p(3) are 1, 1, 2, 3: instant witnesses
    for (long t = 0; t < 4; ++t) {
        const ClassStatus& s = report.statuses[static_cast<std::size_t>(t)];
        CHECK(s.witnessed);
        REQUIRE(s.witness_n.has_value());
        CHECK(*s.witness_n == 0);
    }
    // p(5n+4) = 0 mod 5 forever: still a candidate at depth 50
    CHECK_FALSE(report.statuses[4].witnessed);
    CHECK_FALSE(report.statuses[4].witness_n.has_value());
}

TEST_CASE("scan works on exact coefficients too") {
    const TruncatedSeries p = partition_coeffs(5 * 10 + 4);
    const ScanReport report = scan(FamilySpec::partition(), p, 5, 5, 10);
    CHECK_FALSE(report.statuses[4].witnessed);
    CHECK(report.statuses[0].witnessed);
}

TEST_CASE("scan rejects shallow truncations and bad arguments") {
    const TruncatedSeries p = partition_coeffs(10);
    CHECK_THROWS_AS(scan(FamilySpec::partition(), p, 5, 5, 2), std::invalid_argument); // needs 14
    CHECK_NOTHROW(scan(FamilySpec::partition(), p, 5, 5, 1));                          // needs 9
    CHECK_THROWS_AS(scan(FamilySpec::partition(), p, 0, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(scan(FamilySpec::partition(), p, 2, 4, 1), std::invalid_argument); // 4 not prime
    CHECK_THROWS_AS(scan(FamilySpec::partition(), p, 2, 5, -1), std::invalid_argument);
}

TEST_CASE("verify_congruence") {
    const TruncatedSeries p = partition_coeffs(5 * 200 + 4, 5);
    CHECK(verify_congruence(p, 5, 4, 5, 200).passed);

    const VerifyResult bad = verify_congruence(p, 5, 0, 5, 200);
    CHECK_FALSE(bad.passed);
    REQUIRE(bad.violation_n.has_value());
    CHECK(*bad.violation_n == 0); // p(0) = 1

    // p(5n+1): p(1) = 1 is already nonzero mod 5
    const VerifyResult t1 = verify_congruence(p, 5, 1, 5, 200);
    CHECK_FALSE(t1.passed);
    CHECK(*t1.violation_n == 0);

    CHECK_THROWS_AS(verify_congruence(p, 5, 5, 5, 200), std::invalid_argument);
    CHECK_THROWS_AS(verify_congruence(p, 5, -1, 5, 200), std::invalid_argument);
}

TEST_CASE("reconcile: consistent, warning, and contradiction verdicts") {
    const TruncatedSeries p = partition_coeffs(5 * 50 + 4);
    const IncongruenceCertificate cert = certify(FamilySpec::partition(), p, 5, 5);
    const ScanReport report = scan(FamilySpec::partition(), p, 5, 5, 50);

    const ReconcileResult ok = reconcile(report, cert);
    CHECK(ok.verdict == Consistency::Ok);
    CHECK(ok.notes.empty());

    // a prohibited class that is still a candidate must warn, not contradict
    IncongruenceCertificate tampered = cert;
    tampered.prohibited.push_back(ProhibitedClass{4, 1, 0});
    const ReconcileResult warn = reconcile(report, tampered);
    CHECK(warn.verdict == Consistency::Warn);
    REQUIRE_FALSE(warn.notes.empty());

    // caller-claimed congruence on a prohibited class is a contradiction
    const ReconcileResult contra = reconcile(report, tampered, {4});
    CHECK(contra.verdict == Consistency::Contradiction);
    REQUIRE_FALSE(contra.notes.empty());

    // a verified class nobody prohibits is fine
    const ReconcileResult fine = reconcile(report, cert, {4});
    CHECK(fine.verdict == Consistency::Ok);
}

TEST_CASE("reconcile rejects mismatched parameters") {
    const TruncatedSeries p = partition_coeffs(5 * 20 + 4);
    const IncongruenceCertificate cert = certify(FamilySpec::partition(), p, 5, 5);
    const ScanReport other_m = scan(FamilySpec::partition(), p, 2, 5, 20);
    CHECK_THROWS_AS(reconcile(other_m, cert), std::invalid_argument);
    const ScanReport other_ell = scan(FamilySpec::partition(), p, 5, 7, 20);
    CHECK_THROWS_AS(reconcile(other_ell, cert), std::invalid_argument);
    const ScanReport other_family = scan(FamilySpec::mock_f(), p, 5, 5, 20);
    CHECK_THROWS_AS(reconcile(other_family, cert), std::invalid_argument);
}

TEST_CASE("scan report serialization") {
    const TruncatedSeries p = partition_coeffs(5 * 2 + 4, 5);
    const ScanReport report = scan(FamilySpec::partition(), p, 5, 5, 2);

    const nlohmann::ordered_json j = to_json(report);
    CHECK(j.at("family") == "p");
    CHECK(j.at("m") == 5);
    CHECK(j.at("ell") == 5);
    CHECK(j.at("depth") == 2);
    REQUIRE(j.at("statuses").size() == 5);
    CHECK(j.at("statuses")[0].at("status") == "witnessed_nonzero");
    CHECK(j.at("statuses")[0].at("witness_n") == 0);
    CHECK(j.at("statuses")[4].at("status") == "candidate");
    CHECK_FALSE(j.at("statuses")[4].contains("witness_n"));

    const std::string tsv = to_tsv(report);
    CHECK(tsv ==
          "t\tstatus\twitness_n\n"
          "0\twitnessed_nonzero\t0\n"
          "1\twitnessed_nonzero\t0\n"
          "2\twitnessed_nonzero\t0\n"
          "3\twitnessed_nonzero\t0\n"
          "4\tcandidate\t-\n");
}
