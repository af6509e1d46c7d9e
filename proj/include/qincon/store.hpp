#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qincon/family.hpp"
#include "qincon/series.hpp"

namespace qincon {

inline constexpr int kCacheFormatVersion = 1;

// One persisted coefficient run.  The on-disk format (.qc) is line-oriented
// text: line 1 is a JSON header {version, family, params, modulus, depth},
// then depth+1 lines with one signed-decimal coefficient each, LF endings,
// no trailing whitespace.  The q^(offset/24) prefactor is implied by the
// family and restored on load.
struct CacheEntry {
    int format_version = kCacheFormatVersion;
    FamilySpec family;
    std::optional<std::uint32_t> modulus;
    TruncatedSeries coeffs = TruncatedSeries::zero(0);

    long depth() const { return static_cast<long>(coeffs.trunc()); }
};

// The exact byte content of the .qc file for an entry.
std::string to_qc_text(const CacheEntry& entry);

// Write atomically: the full payload goes to "<path>.tmp", which is then
// renamed over path.  Refuses to overwrite an existing file whose header
// declares a newer format_version.  Throws StoreError on any failure.
void save_cache(const CacheEntry& entry, const std::filesystem::path& path);

// Parse and validate a .qc file: header wellformedness, version match, and
// declared depth == coefficient count - 1.  Throws StoreError.
CacheEntry load_cache(const std::filesystem::path& path);

// Canonical cache file name: <family-token-sanitized>-m<ell|exact>-d<depth>.qc
std::string cache_filename(const FamilySpec& family, std::optional<std::uint32_t> modulus,
                           long depth);

} // namespace qincon
