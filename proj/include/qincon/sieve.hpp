#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qincon/family.hpp"
#include "qincon/series.hpp"

namespace qincon {

// One residue class t mod m ruled out by the sieve, with the multiplier d
// that maps the seed class onto it:  t = t0 d^2 + B (d^2 - 1)/24  (mod m).
struct ProhibitedClass {
    long t = 0;
    long witness_d = 1;
    long seed_t0 = 0;  // the seed index (not just its class) the witness maps from
};

// Image of one seed under the sieve map, keyed by t with the smallest witness d.
using ResidueImage = std::map<long, long>;

// prohibited_residues: enumerate t = t0 d^2 + B (d^2-1)/24 mod m over all d
// coprime to the family's admissibility modulus.  Since t depends only on
// d mod 24m, and a residue class c mod 24m contains integers coprime to the
// full modulus 6Nm iff gcd(c, g) = 1 for g = rad(gcd(24m, 6Nm)), it suffices
// to walk c in [1, 24m].
ResidueImage prohibited_residues_eta(long B, long level, long m, long t0);

enum class MockFlavor { F, Omega };

// Mock flavors need their seed class to dodge the shadow's support:
// (1-24 t0 | p) = -1 (F) or (-3 t0 - 2 | p) = -1 (Omega) for some odd prime
// p | m.  Throws PreconditionNotMet otherwise -- never silently returns a set.
ResidueImage prohibited_residues_mock(MockFlavor flavor, long m, long t0);

// The single residue class mod ell that the family's corollary cannot rule
// out: B (ell^2 - 1)/24 mod ell, an exact integer since ell^2 = 1 (mod 24).
long exceptional_residue(const FamilySpec& family, std::uint32_t ell);

// One evaluated hypothesis of a corollary, e.g. "(k(k-24) | ell) = -1".
struct ConditionItem {
    std::string name;    // stable identifier, e.g. "kronecker(k(k-24), ell) == -1"
    bool passed = false;
    long value = 0;      // the symbol value or divisor actually found
};

struct ConditionReport {
    std::vector<ConditionItem> items;
    bool single_class_applies = false;  // m = ell corollary hypotheses all hold
    bool two_class_applies = false;     // m = 2 ell corollary hypotheses all hold
};

ConditionReport corollary_conditions(const FamilySpec& family, std::uint32_t ell);

// m = 2 ell analysis for Frobenius families: the surviving residue pair
// {k(1-ell^2)/24, k(1-ell^2)/24 + ell} mod 2 ell, guaranteed only when the
// parity-appropriate hypothesis set holds.
struct TwoEllAnalysis {
    long survivor = 0;           // k(1-ell^2)/24 mod 2 ell
    long survivor_plus_ell = 0;  // survivor + ell mod 2 ell
    bool guaranteed = false;     // conditions pass: all other classes are prohibited
    ConditionReport conditions;
};

TwoEllAnalysis two_ell_analysis(int k, std::uint32_t ell);

struct SeedRecord {
    long cls = 0;                 // residue class mod m
    long t0 = 0;                  // seed index: first n in the class with a(n) != 0
    std::uint32_t a_t0_mod_ell = 0;
};

struct IncongruenceCertificate {
    FamilySpec family;
    long m = 1;
    std::uint32_t ell = 5;
    std::vector<SeedRecord> seeds;
    std::vector<ProhibitedClass> prohibited;  // sorted by t; one witness each
    std::vector<long> exceptional;            // classes mod m no corollary covers
    ConditionReport conditions;
    std::vector<std::string> diagnostics;

    bool is_prohibited(long t) const;
};

// Build a certificate: seed every class of coeffs mod m (or only the pinned
// classes), push each valid seed through the family's sieve map, and union
// the images.  Pinned classes that fail to seed (or, for mock families, fail
// their Legendre precondition) throw; auto-discovered ones are skipped with a
// diagnostic.
IncongruenceCertificate certify(const FamilySpec& family, const TruncatedSeries& exact_coeffs,
                                long m, std::uint32_t ell,
                                const std::optional<std::vector<long>>& pinned_classes = std::nullopt);

nlohmann::ordered_json to_json(const IncongruenceCertificate& cert);

} // namespace qincon
