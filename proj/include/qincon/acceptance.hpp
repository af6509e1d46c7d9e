#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qincon::acceptance {

// One gate of the regression suite: a worked example, a named congruence
// batch, or a property sweep.  detail carries the first mismatch (on failure)
// or a short summary of what was checked.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Run the nine computational gates (sieve examples, corollary screens, named
// congruence verifications, the new cphi_5 mod 13 congruences, the omega and
// nu suites, and the property sweeps).  Each is self-contained; failures are
// reported, never thrown.
std::vector<CriterionResult> run_core_criteria();

// Randomized store round-trip: random families, depths, and coefficient
// modes, saved to a scratch directory and loaded back.  Deterministic per
// seed.
CriterionResult store_roundtrip_check(std::uint64_t seed);

void print_results(const std::vector<CriterionResult>& results, std::ostream& out);
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace qincon::acceptance
