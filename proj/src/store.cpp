#include "qincon/store.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "qincon/errors.hpp"

namespace qincon {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json header_json(const CacheEntry& entry) {
    ordered_json h;
    h["version"] = entry.format_version;
    h["family"] = entry.family.kind_string();
    h["params"] = entry.family.params_json();
    if (entry.modulus) h["modulus"] = *entry.modulus; else h["modulus"] = nullptr;
    h["depth"] = entry.depth();
    return h;
}

int peek_version(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StoreError("cannot read existing file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw StoreError("existing file has no header: " + path.string());
    try {
        const ordered_json h = ordered_json::parse(line);
        return h.at("version").get<int>();
    } catch (const std::exception& err) {
        throw StoreError("existing file has malformed header (" + std::string(err.what()) +
                         "): " + path.string());
    }
}

std::uint32_t parse_residue(const std::string& line, std::uint32_t modulus,
                            const std::filesystem::path& path, std::size_t lineno) {
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc() || ptr != line.data() + line.size() || value >= modulus)
        throw StoreError("malformed residue line " + std::to_string(lineno) + " in " +
                         path.string() + ": \"" + line + "\"");
    return value;
}

mpz_class parse_exact(const std::string& line, const std::filesystem::path& path,
                      std::size_t lineno) {
    // mpz_class(string) accepts leading whitespace; enforce the strict format
    // (optional '-', then digits) ourselves.
    const bool ok = !line.empty() &&
                    line.find_first_not_of("0123456789", line[0] == '-' ? 1 : 0) ==
                        std::string::npos &&
                    line != "-";
    if (!ok)
        throw StoreError("malformed coefficient line " + std::to_string(lineno) + " in " +
                         path.string() + ": \"" + line + "\"");
    return mpz_class(line);
}

} // namespace

std::string to_qc_text(const CacheEntry& entry) {
    std::ostringstream body;
    body << header_json(entry).dump() << '\n';
    const std::size_t count = entry.coeffs.trunc() + 1;
    if (entry.modulus) {
        for (std::size_t n = 0; n < count; ++n) body << entry.coeffs.residue_at(n) << '\n';
    } else {
        for (std::size_t n = 0; n < count; ++n)
            body << entry.coeffs.exact_at(n).get_str() << '\n';
    }
    return body.str();
}

void save_cache(const CacheEntry& entry, const std::filesystem::path& path) {
    if (std::filesystem::exists(path) && peek_version(path) > entry.format_version)
        throw StoreError("refusing to overwrite " + path.string() +
                         ": existing file has a newer format version");

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw StoreError("cannot open " + tmp.string() + " for writing");
        out << to_qc_text(entry);
        out.flush();
        if (!out) throw StoreError("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw StoreError("rename to " + path.string() + " failed: " + ec.message());
    }
}

CacheEntry load_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw StoreError("missing header in " + path.string());

    int version = 0;
    FamilySpec family;
    std::optional<std::uint32_t> modulus;
    long depth = 0;
    try {
        const ordered_json h = ordered_json::parse(line);
        version = h.at("version").get<int>();
        if (version != kCacheFormatVersion)
            throw StoreError("format version " + std::to_string(version) + " of " +
                             path.string() + " does not match supported version " +
                             std::to_string(kCacheFormatVersion));
        family = FamilySpec::from_header(h.at("family").get<std::string>(), h.at("params"));
        if (!h.at("modulus").is_null()) modulus = h.at("modulus").get<std::uint32_t>();
        depth = h.at("depth").get<long>();
    } catch (const StoreError&) {
        throw;
    } catch (const std::exception& err) {
        throw StoreError("malformed header in " + path.string() + ": " + err.what());
    }
    if (depth < 0) throw StoreError("negative depth in " + path.string());

    const std::size_t count = static_cast<std::size_t>(depth) + 1;
    std::vector<mpz_class> exact;
    std::vector<std::uint32_t> residues;
    if (modulus) residues.reserve(count); else exact.reserve(count);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (modulus) residues.push_back(parse_residue(line, *modulus, path, lineno));
        else exact.push_back(parse_exact(line, path, lineno));
    }
    const std::size_t have = modulus ? residues.size() : exact.size();
    if (have != count)
        throw StoreError("coefficient count " + std::to_string(have) + " in " + path.string() +
                         " does not match declared depth " + std::to_string(depth));

    CacheEntry entry;
    entry.format_version = version;
    entry.family = family;
    entry.modulus = modulus;
    const long offset = family.series_offset24();
    entry.coeffs = modulus ? TruncatedSeries::from_residues(std::move(residues), *modulus, offset)
                           : TruncatedSeries::from_exact(std::move(exact), offset);
    return entry;
}

std::string cache_filename(const FamilySpec& family, std::optional<std::uint32_t> modulus,
                           long depth) {
    std::string token = family.token();
    for (char& c : token)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
    std::string mod = modulus ? std::to_string(*modulus) : "exact";
    return token + "-m" + mod + "-d" + std::to_string(depth) + ".qc";
}

} // namespace qincon
