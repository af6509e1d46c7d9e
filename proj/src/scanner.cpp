#include "qincon/scanner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qincon/numtheory.hpp"

namespace qincon {

namespace {

void check_scan_args(const TruncatedSeries& coeffs, long m, std::uint32_t ell, long depth) {
    if (m < 1) throw std::invalid_argument("scan: m must be >= 1");
    if (depth < 0) throw std::invalid_argument("scan: depth must be >= 0");
    if (!nt::is_prime(ell)) throw std::invalid_argument("scan: ell must be prime");
    const long long needed = static_cast<long long>(m) * depth + m - 1;
    if (static_cast<long long>(coeffs.trunc()) < needed)
        throw std::invalid_argument("scan: truncation " + std::to_string(coeffs.trunc()) +
                                    " too shallow, need " + std::to_string(needed));
}

} // namespace

ScanReport scan(const FamilySpec& family, const TruncatedSeries& coeffs, long m,
                std::uint32_t ell, long depth) {
    check_scan_args(coeffs, m, ell, depth);
    ScanReport report;
    report.family = family;
    report.m = m;
    report.ell = ell;
    report.depth = depth;
    report.statuses.reserve(static_cast<std::size_t>(m));
    for (long t = 0; t < m; ++t) {
        ClassStatus status;
        status.t = t;
        for (long n = 0; n <= depth; ++n) {
            const std::size_t idx = static_cast<std::size_t>(m) * n + t;
            if (coeffs.mod_at(idx, ell) != 0) {
                status.witnessed = true;
                status.witness_n = n;
                break;
            }
        }
        report.statuses.push_back(std::move(status));
    }
    return report;
}

VerifyResult verify_congruence(const TruncatedSeries& coeffs, long m, long t, std::uint32_t ell,
                               long depth) {
    check_scan_args(coeffs, m, ell, depth);
    if (t < 0 || t >= m) throw std::invalid_argument("verify: t must lie in [0, m)");
    VerifyResult result;
    for (long n = 0; n <= depth; ++n) {
        const std::size_t idx = static_cast<std::size_t>(m) * n + t;
        if (coeffs.mod_at(idx, ell) != 0) {
            result.violation_n = n;
            return result;
        }
    }
    result.passed = true;
    return result;
}

ReconcileResult reconcile(const ScanReport& report, const IncongruenceCertificate& cert,
                          const std::vector<long>& caller_verified) {
    if (!(report.family == cert.family) || report.m != cert.m || report.ell != cert.ell)
        throw std::invalid_argument("reconcile: scan and certificate parameters differ");
    ReconcileResult result;
    for (const ProhibitedClass& p : cert.prohibited) {
        if (std::find(caller_verified.begin(), caller_verified.end(), p.t) !=
            caller_verified.end()) {
            result.verdict = Consistency::Contradiction;
            result.notes.push_back("class " + std::to_string(p.t) +
                                   " is prohibited by the certificate but marked verified");
        }
    }
    if (result.verdict == Consistency::Contradiction) return result;
    for (const ProhibitedClass& p : cert.prohibited) {
        const auto it = std::find_if(report.statuses.begin(), report.statuses.end(),
                                     [&](const ClassStatus& s) { return s.t == p.t; });
        if (it != report.statuses.end() && !it->witnessed) {
            result.verdict = Consistency::Warn;
            result.notes.push_back("prohibited class " + std::to_string(p.t) +
                                   " has no witness up to depth " + std::to_string(report.depth) +
                                   " (a witness exists beyond some unknown bound)");
        }
    }
    return result;
}

nlohmann::ordered_json to_json(const ScanReport& report) {
    nlohmann::ordered_json j;
    j["family"] = report.family.token();
    j["m"] = report.m;
    j["ell"] = report.ell;
    j["depth"] = report.depth;
    j["statuses"] = nlohmann::ordered_json::array();
    for (const ClassStatus& s : report.statuses) {
        nlohmann::ordered_json row;
        row["t"] = s.t;
        row["status"] = s.witnessed ? "witnessed_nonzero" : "candidate";
        if (s.witness_n) row["witness_n"] = *s.witness_n;
        j["statuses"].push_back(std::move(row));
    }
    return j;
}

std::string to_tsv(const ScanReport& report) {
    std::ostringstream out;
    out << "t\tstatus\twitness_n\n";
    for (const ClassStatus& s : report.statuses) {
        out << s.t << '\t' << (s.witnessed ? "witnessed_nonzero" : "candidate") << '\t';
        if (s.witness_n) out << *s.witness_n; else out << '-';
        out << '\n';
    }
    return out.str();
}

} // namespace qincon
