#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qincon {

// Which q-series family a command or certificate refers to.
//
// Selector grammar (CLI and reports):
//   p                      ordinary partitions
//   cphi:<k>               k-colored generalized Frobenius partitions
//   mock:f | mock:omega | mock:nu
//   eta:<d1^r1,d2^r2,...>@N=<level>   eta quotient prod eta(d z)^r
struct FamilySpec {
    enum class Kind { Partition, Frobenius, MockF, MockOmega, MockNu, Eta };

    Kind kind = Kind::Partition;
    int colors = 0;                                  // Frobenius k
    std::vector<std::pair<long, long>> eta_factors;  // (delta, r)
    long eta_level = 1;

    static FamilySpec partition();
    static FamilySpec frobenius(int k);
    static FamilySpec mock_f();
    static FamilySpec mock_omega();
    static FamilySpec mock_nu();
    static FamilySpec eta(std::vector<std::pair<long, long>> factors, long level);

    static FamilySpec parse(const std::string& selector);

    bool is_mock() const {
        return kind == Kind::MockF || kind == Kind::MockOmega || kind == Kind::MockNu;
    }

    // Exponent-prefix constant B: the family expansion lives on q^(B/24 + n)
    // (or is reported as if it did, for the mock flavors).  Drives the sieve
    // formula t = t0 d^2 + B (d^2 - 1)/24.
    long B() const;

    // Congruence-subgroup level N of the eta-type families; the admissible d
    // must be coprime to 6Nm.  Mock flavors use a fixed d-range instead and
    // have no level here.
    long level() const;

    // q^(offset24/24) prefactor the coefficient series itself carries.
    long series_offset24() const;

    std::string token() const;       // canonical selector string
    std::string kind_string() const; // "p", "cphi", "mock:f", ..., "eta"
    nlohmann::ordered_json params_json() const;
    static FamilySpec from_header(const std::string& kind_string, const nlohmann::json& params);

    bool operator==(const FamilySpec& other) const;
};

} // namespace qincon
