#include "qincon/family.hpp"

#include <charconv>
#include <stdexcept>

#include "qincon/errors.hpp"

namespace qincon {

namespace {

long parse_long(std::string_view s, const char* what) {
    long v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw UsageError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
    return v;
}

} // namespace

FamilySpec FamilySpec::partition() { return FamilySpec{}; }

FamilySpec FamilySpec::frobenius(int k) {
    if (k < 1) throw UsageError("cphi needs k >= 1");
    FamilySpec f;
    f.kind = Kind::Frobenius;
    f.colors = k;
    return f;
}

FamilySpec FamilySpec::mock_f() {
    FamilySpec f;
    f.kind = Kind::MockF;
    return f;
}

FamilySpec FamilySpec::mock_omega() {
    FamilySpec f;
    f.kind = Kind::MockOmega;
    return f;
}

FamilySpec FamilySpec::mock_nu() {
    FamilySpec f;
    f.kind = Kind::MockNu;
    return f;
}

FamilySpec FamilySpec::eta(std::vector<std::pair<long, long>> factors, long level) {
    if (level < 1) throw UsageError("eta level must be >= 1");
    for (const auto& [delta, r] : factors) {
        (void)r;
        if (delta < 1) throw UsageError("eta factor delta must be >= 1");
    }
    FamilySpec f;
    f.kind = Kind::Eta;
    f.eta_factors = std::move(factors);
    f.eta_level = level;
    return f;
}

FamilySpec FamilySpec::parse(const std::string& selector) {
    if (selector == "p") return partition();
    if (selector == "mock:f") return mock_f();
    if (selector == "mock:omega") return mock_omega();
    if (selector == "mock:nu") return mock_nu();
    if (selector.rfind("cphi:", 0) == 0)
        return frobenius(static_cast<int>(parse_long(std::string_view(selector).substr(5), "color count")));
    if (selector.rfind("eta:", 0) == 0) {
        std::string_view body = std::string_view(selector).substr(4);
        const auto at = body.find("@N=");
        if (at == std::string_view::npos)
            throw UsageError("eta selector needs a level suffix '@N=<level>'");
        const long level = parse_long(body.substr(at + 3), "eta level");
        std::string_view list = body.substr(0, at);
        if (list.empty()) throw UsageError("eta selector needs at least one delta^r factor");
        std::vector<std::pair<long, long>> factors;
        while (!list.empty()) {
            const auto comma = list.find(',');
            std::string_view item = list.substr(0, comma);
            const auto caret = item.find('^');
            if (caret == std::string_view::npos)
                throw UsageError("eta factor must look like delta^r, got '" + std::string(item) + "'");
            factors.emplace_back(parse_long(item.substr(0, caret), "eta delta"),
                                 parse_long(item.substr(caret + 1), "eta exponent"));
            list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
        }
        return eta(std::move(factors), level);
    }
    throw UsageError("unknown family selector '" + selector +
                     "' (expected p, cphi:<k>, mock:f, mock:omega, mock:nu, or eta:<...>@N=<level>)");
}

long FamilySpec::B() const {
    switch (kind) {
        case Kind::Partition: return -1;
        case Kind::Frobenius: return -colors;
        case Kind::MockF: return -1;
        case Kind::MockOmega: return 16;
        case Kind::MockNu: return 8; // matches its exceptional class (l^2-1)/3 = 8(l^2-1)/24
        case Kind::Eta: {
            long b = 0;
            for (const auto& [delta, r] : eta_factors) b += delta * r;
            return b;
        }
    }
    throw std::logic_error("unreachable");
}

long FamilySpec::level() const {
    switch (kind) {
        case Kind::Partition: return 1;
        case Kind::Frobenius: return (colors % 2 == 1) ? colors : 2L * colors;
        case Kind::Eta: return eta_level;
        default:
            throw std::logic_error("mock families have no eta-type level");
    }
}

long FamilySpec::series_offset24() const {
    switch (kind) {
        case Kind::Partition: return -1;
        case Kind::Frobenius: return -colors;
        case Kind::Eta: return B();
        default: return 0; // mock expansions are plain q-series
    }
}

std::string FamilySpec::token() const {
    switch (kind) {
        case Kind::Partition: return "p";
        case Kind::Frobenius: return "cphi:" + std::to_string(colors);
        case Kind::MockF: return "mock:f";
        case Kind::MockOmega: return "mock:omega";
        case Kind::MockNu: return "mock:nu";
        case Kind::Eta: {
            std::string s = "eta:";
            bool first = true;
            for (const auto& [delta, r] : eta_factors) {
                if (!first) s += ',';
                first = false;
                s += std::to_string(delta) + "^" + std::to_string(r);
            }
            s += "@N=" + std::to_string(eta_level);
            return s;
        }
    }
    throw std::logic_error("unreachable");
}

std::string FamilySpec::kind_string() const {
    switch (kind) {
        case Kind::Partition: return "p";
        case Kind::Frobenius: return "cphi";
        case Kind::MockF: return "mock:f";
        case Kind::MockOmega: return "mock:omega";
        case Kind::MockNu: return "mock:nu";
        case Kind::Eta: return "eta";
    }
    throw std::logic_error("unreachable");
}

nlohmann::ordered_json FamilySpec::params_json() const {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    if (kind == Kind::Frobenius) p["k"] = colors;
    if (kind == Kind::Eta) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& [delta, r] : eta_factors) arr.push_back({delta, r});
        p["factors"] = arr;
        p["level"] = eta_level;
    }
    return p;
}

FamilySpec FamilySpec::from_header(const std::string& kind_string, const nlohmann::json& params) {
    if (kind_string == "p") return partition();
    if (kind_string == "mock:f") return mock_f();
    if (kind_string == "mock:omega") return mock_omega();
    if (kind_string == "mock:nu") return mock_nu();
    if (kind_string == "cphi") return frobenius(params.at("k").get<int>());
    if (kind_string == "eta") {
        std::vector<std::pair<long, long>> factors;
        for (const auto& f : params.at("factors"))
            factors.emplace_back(f.at(0).get<long>(), f.at(1).get<long>());
        return eta(std::move(factors), params.at("level").get<long>());
    }
    throw StoreError("unknown family kind '" + kind_string + "'");
}

bool FamilySpec::operator==(const FamilySpec& other) const {
    return kind == other.kind && colors == other.colors && eta_factors == other.eta_factors &&
           (kind != Kind::Eta || eta_level == other.eta_level);
}

} // namespace qincon
