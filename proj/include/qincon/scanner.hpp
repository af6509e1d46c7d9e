#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qincon/family.hpp"
#include "qincon/series.hpp"
#include "qincon/sieve.hpp"

namespace qincon {

// Outcome for one residue class t mod m after scanning n = 0..depth.
struct ClassStatus {
    long t = 0;
    bool witnessed = false;          // some a(mn+t) != 0 (mod ell) with n <= depth
    std::optional<long> witness_n;   // the least such n
};

struct ScanReport {
    FamilySpec family;
    long m = 1;
    std::uint32_t ell = 5;
    long depth = 0;
    std::vector<ClassStatus> statuses;  // exactly one per t, ascending
};

// Walk every class: report the least n <= depth with a(mn+t) != 0 (mod ell),
// else leave the class a candidate at this depth.  A candidate is never a
// claim that a congruence holds.  Requires coeffs.trunc() >= m*depth + m - 1.
ScanReport scan(const FamilySpec& family, const TruncatedSeries& coeffs, long m,
                std::uint32_t ell, long depth);

struct VerifyResult {
    bool passed = false;              // a(mn+t) = 0 (mod ell) for all n <= depth
    std::optional<long> violation_n;  // least violating n otherwise
};

VerifyResult verify_congruence(const TruncatedSeries& coeffs, long m, long t, std::uint32_t ell,
                               long depth);

enum class Consistency { Ok, Warn, Contradiction };

struct ReconcileResult {
    Consistency verdict = Consistency::Ok;
    std::vector<std::string> notes;
};

// Cross-check a scan against a certificate.  caller_verified lists classes
// the caller claims hold as congruences (e.g. verified elsewhere to some
// depth); a theorem-prohibited class in that list is a contradiction.  A
// prohibited class that is merely still a candidate yields a warning: the
// theorem guarantees a witness exists but gives no bound.
ReconcileResult reconcile(const ScanReport& report, const IncongruenceCertificate& cert,
                          const std::vector<long>& caller_verified = {});

nlohmann::ordered_json to_json(const ScanReport& report);
std::string to_tsv(const ScanReport& report);

} // namespace qincon
