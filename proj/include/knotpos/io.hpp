#pragma once

// JSON and JSON-lines plumbing: knot-table entries, obstruction reports,
// and the persistent invariant cache.

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "obstruct.hpp"

namespace knotpos {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Table entries

struct TableEntry {
    std::string name;
    std::optional<std::string> pd;
    std::optional<std::string> gauss;
    ExternalData known;
    std::optional<int> known_signature;
    std::optional<Int> known_det;
    Json known_raw = Json::object();
};

namespace detail {

template <class T>
void read_opt(const Json& j, const char* key, std::optional<T>& out) {
    if (!j.contains(key) || j[key].is_null()) return;
    try {
        out = j[key].get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(Errc::MalformedSyntax, std::string("field '") + key + "' has the wrong type");
    }
}

// Accepts true/false as well as the "Y"/"N" spelling used by public tables.
inline void read_flag(const Json& j, const char* key, std::optional<bool>& out) {
    if (!j.contains(key) || j[key].is_null()) return;
    const Json& v = j[key];
    if (v.is_boolean()) out = v.get<bool>();
    else if (v.is_string() && (v == "Y" || v == "y" || v == "true")) out = true;
    else if (v.is_string() && (v == "N" || v == "n" || v == "false")) out = false;
    else fail(Errc::MalformedSyntax, std::string("field '") + key + "' is not a flag");
}

}  // namespace detail

inline ExternalData external_from_json(const Json& k) {
    using detail::read_flag;
    using detail::read_opt;
    ExternalData e;
    read_opt(k, "genus", e.genus);
    read_opt(k, "g4", e.g4);
    read_opt(k, "chi", e.chi);
    read_opt(k, "unknotting", e.unknotting);
    read_opt(k, "u_plus", e.u_plus);
    read_opt(k, "d_plus_trefoil", e.d_plus_trefoil);
    read_opt(k, "tau", e.tau);
    read_opt(k, "splitting_number", e.splitting_number);
    read_opt(k, "u_comp", e.u_comp);
    read_flag(k, "fibered", e.fibered);
    read_flag(k, "prime", e.prime);
    read_flag(k, "split", e.split);
    read_flag(k, "bennequin_sharp", e.bennequin_sharp);
    read_flag(k, "nontrivial", e.nontrivial);
    return e;
}

inline Json external_to_json(const ExternalData& e) {
    Json j = Json::object();
    auto put = [&](const char* key, const auto& v) {
        if (v) j[key] = *v;
    };
    put("genus", e.genus);
    put("g4", e.g4);
    put("chi", e.chi);
    put("unknotting", e.unknotting);
    put("u_plus", e.u_plus);
    put("d_plus_trefoil", e.d_plus_trefoil);
    put("tau", e.tau);
    put("splitting_number", e.splitting_number);
    put("u_comp", e.u_comp);
    put("fibered", e.fibered);
    put("prime", e.prime);
    put("split", e.split);
    put("bennequin_sharp", e.bennequin_sharp);
    put("nontrivial", e.nontrivial);
    return j;
}

inline TableEntry parse_table_entry(const std::string& line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::MalformedSyntax, std::string("table line is not JSON: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::MalformedSyntax, "table line is not a JSON object");
    TableEntry t;
    if (!j.contains("name") || !j["name"].is_string()) fail(Errc::MalformedSyntax, "table entry without a name");
    t.name = j["name"].get<std::string>();
    detail::read_opt(j, "pd", t.pd);
    detail::read_opt(j, "gauss", t.gauss);
    if (t.pd.has_value() == t.gauss.has_value())
        fail(Errc::MalformedSyntax, "table entry '" + t.name + "' needs exactly one of pd and gauss");
    if (j.contains("known")) {
        const Json& k = j["known"];
        if (!k.is_object()) fail(Errc::MalformedSyntax, "'known' must be an object");
        t.known_raw = k;
        t.known = external_from_json(k);
        detail::read_opt(k, "signature", t.known_signature);
        if (k.contains("determinant") && !k["determinant"].is_null()) {
            const Json& dv = k["determinant"];
            t.known_det = dv.is_string() ? Int(dv.get<std::string>()) : Int(dv.get<long long>());
        }
    }
    return t;
}

inline Diagram entry_diagram(const TableEntry& t) { return t.pd ? parse_pd(*t.pd) : parse_gauss(*t.gauss); }

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot read '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports

inline Json record_to_json(const TestRecord& r) {
    return Json{{"test_id", r.id}, {"citation", r.citation}, {"outcome", outcome_name(r.outcome)},
                {"lhs", r.lhs},    {"rhs", r.rhs},           {"reason", r.reason}};
}

inline Json report_to_json(const ObstructionReport& r, const Json& known_raw = Json()) {
    Json tests = Json::array();
    for (const auto& t : r.records) tests.push_back(record_to_json(t));
    Json j{{"name", r.name}, {"target", target_name(r.target)}, {"verdict", verdict_name(r.verdict)}};
    j["known"] = known_raw.is_null() ? external_to_json(r.known) : known_raw;
    j["counts"] = Json{{"Fail", r.count(Outcome::Fail)}, {"Pass", r.count(Outcome::Pass)}, {"Inconclusive", r.count(Outcome::Inconclusive)}};
    j["tests"] = std::move(tests);
    return j;
}

inline Json profile_to_json(const InvariantProfile& p) {
    Json j{{"name", p.name}, {"components", p.components}};
    if (p.conway) j["conway"] = p.conway->str();
    if (p.homfly) j["homfly"] = p.homfly->str();
    if (p.jones) j["jones"] = p.jones->str();
    if (p.dubrovnik) j["dubrovnik"] = p.dubrovnik->str();
    if (p.signature) j["signature"] = *p.signature;
    if (p.det) j["determinant"] = p.det->str();
    if (!p.levine_tristram.empty()) {
        Json lt = Json::array();
        for (const auto& v : p.levine_tristram) lt.push_back(Json{{"n", v.n}, {"k", v.k}, {"value", v.value}});
        j["levine_tristram"] = lt;
    }
    if (p.diagram_chi) j["diagram_chi"] = *p.diagram_chi;
    if (p.c_minus) j["c_minus"] = *p.c_minus;
    if (p.tag) j["class"] = tag_name(*p.tag);
    j["known"] = external_to_json(p.known);
    return j;
}

// ---------------------------------------------------------------------------
// Invariant cache

constexpr const char* kEngineVersion = "knotpos-1.0";

struct CacheRecord {
    std::string key;        // canonical diagram key
    std::string invariant;  // e.g. "homfly", "signature", "lt:5/2"
    std::string value;      // canonical text serialization
    std::string version = kEngineVersion;
};

inline Json cache_record_to_json(const CacheRecord& r) {
    return Json{{"key", r.key}, {"invariant", r.invariant}, {"value", r.value}, {"version", r.version}};
}

// Thread-safe get-or-insert map persisted as JSON lines.  Records written
// by another engine version are ignored on load.
class InvariantCache {
public:
    InvariantCache() = default;

    // Reads `path` if it exists; save() appends to it.
    explicit InvariantCache(const std::string& path) : path_(path) {
        std::ifstream in(path);
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Json j;
            try {
                j = Json::parse(line);
            } catch (const nlohmann::json::parse_error&) {
                ++skipped_;
                continue;
            }
            if (!j.is_object() || j.value("version", "") != kEngineVersion) {
                ++skipped_;
                continue;
            }
            map_.emplace(std::make_pair(j.value("key", ""), j.value("invariant", "")), j.value("value", ""));
        }
    }

    template <class F>
    std::string get_or_compute(const std::string& key, const std::string& invariant, F&& compute) {
        auto id = std::make_pair(key, invariant);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(id);
            if (it != map_.end()) {
                ++hits_;
                return it->second;
            }
        }
        std::string value = compute();
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = map_.emplace(id, value);
        if (inserted) fresh_.push_back({key, invariant, value, kEngineVersion});
        else ++hits_;
        return it->second;
    }

    // Appends records computed in this run, sorted so that the file does
    // not depend on scheduling.
    void save() {
        if (path_.empty() || fresh_.empty()) return;
        std::sort(fresh_.begin(), fresh_.end(), [](const CacheRecord& a, const CacheRecord& b) {
            return std::tie(a.key, a.invariant) < std::tie(b.key, b.invariant);
        });
        std::ofstream out(path_, std::ios::app);
        if (!out) fail(Errc::Io, "cannot write cache '" + path_ + "'");
        for (const auto& r : fresh_) out << cache_record_to_json(r).dump() << "\n";
        fresh_.clear();
    }

    size_t size() const { return map_.size(); }
    size_t hits() const { return hits_; }
    size_t skipped() const { return skipped_; }

private:
    std::string path_;
    std::mutex mu_;
    std::map<std::pair<std::string, std::string>, std::string> map_;
    std::vector<CacheRecord> fresh_;
    size_t hits_ = 0;
    size_t skipped_ = 0;
};

}  // namespace knotpos
