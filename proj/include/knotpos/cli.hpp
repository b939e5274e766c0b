#pragma once

// Command implementations behind the knotpos executable.  Each command
// reads its inputs from CliOptions, writes its report to `out`, diagnostics
// to `err`, and returns the process exit code.

#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "io.hpp"

namespace knotpos {

enum ExitCode { kExitOk = 0, kExitInput = 1, kExitResource = 2, kExitInternal = 3 };

inline int exit_code_for(Errc e) {
    if (e == Errc::ResourceLimit) return kExitResource;
    if (e == Errc::Internal) return kExitInternal;
    return kExitInput;
}

struct CliOptions {
    std::optional<std::string> pd;
    std::optional<std::string> gauss;
    std::optional<std::string> table;
    std::optional<std::string> out;
    std::optional<std::string> cache;
    std::string format;  // empty: command default
    Target target = Target::Wsap;
    int jobs = 1;
    std::uint64_t budget = kDefaultBudget;
    std::vector<std::pair<int, int>> omegas = default_omegas();
    std::set<std::string> invariants;
    bool dubrovnik = false;
};

// "2/1,5/2" -> {(2,1),(5,2)}: omega = exp(2 pi i k / n).
inline std::vector<std::pair<int, int>> parse_omegas(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) continue;
        auto slash = item.find('/');
        if (slash == std::string::npos) fail(Errc::MalformedSyntax, "omega '" + item + "' is not of the form n/k");
        int n = 0, k = 0;
        try {
            n = std::stoi(item.substr(0, slash));
            k = std::stoi(item.substr(slash + 1));
        } catch (const std::exception&) {
            fail(Errc::MalformedSyntax, "omega '" + item + "' is not of the form n/k");
        }
        if (n <= 0) fail(Errc::MalformedSyntax, "omega order must be positive");
        if (((k % n) + n) % n == 0) fail(Errc::OmegaEqualsOne, "omega '" + item + "' equals 1");
        out.push_back({n, k});
    }
    return out;
}

// Runs f(0..n-1) on up to `jobs` threads.  Callers store results by index,
// so output order never depends on scheduling.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Inputs

struct InputItem {
    std::string name;
    std::optional<Diagram> diagram;
    std::optional<TableEntry> entry;
    std::string error;
    Errc error_code = Errc::MalformedSyntax;
};

inline std::vector<InputItem> gather_inputs(const CliOptions& o) {
    std::vector<InputItem> items;
    int given = (o.pd ? 1 : 0) + (o.gauss ? 1 : 0) + (o.table ? 1 : 0);
    if (given != 1) fail(Errc::MalformedSyntax, "give exactly one of --pd, --gauss, --table");
    if (o.table) {
        auto lines = read_lines(*o.table);
        int row = 0;
        for (const auto& line : lines) {
            ++row;
            InputItem it;
            it.name = "line " + std::to_string(row);
            try {
                it.entry = parse_table_entry(line);
                it.name = it.entry->name;
                it.diagram = entry_diagram(*it.entry);
            } catch (const Error& e) {
                it.error = e.what();
                it.error_code = e.code();
            }
            items.push_back(std::move(it));
        }
        return items;
    }
    InputItem it;
    it.name = "input";
    it.diagram = o.pd ? parse_pd(*o.pd) : parse_gauss(*o.gauss);
    items.push_back(std::move(it));
    return items;
}

// ---------------------------------------------------------------------------
// Cached invariant engine

class Engine {
public:
    Engine(std::uint64_t budget, InvariantCache* cache) : budget_(budget), cache_(cache) {}

    std::string get(const Diagram& d, const std::string& key, const std::string& id) {
        auto compute = [&] { return compute_text(d, id); };
        return cache_ ? cache_->get_or_compute(key, id, compute) : compute();
    }

    InvariantProfile profile(const std::string& name, const Diagram& d, const std::vector<std::pair<int, int>>& omegas,
                             bool with_dubrovnik) {
        std::string key = canonical_key(d);
        InvariantProfile p;
        p.name = name;
        p.components = d.num_components();
        p.homfly = Poly2::parse(get(d, key, "homfly"), 'v', 'z');
        p.conway = conway_from_homfly(*p.homfly);
        p.jones = jones_from_homfly(*p.homfly);
        p.det = determinant_from_conway(*p.conway);
        if (with_dubrovnik) p.dubrovnik = Poly2::parse(get(d, key, "dubrovnik"), 'a', 'z');
        p.signature = std::stoi(get(d, key, "signature"));
        for (auto [n, k] : omegas)
            p.levine_tristram.push_back({n, k, std::stoi(get(d, key, "lt:" + std::to_string(n) + "/" + std::to_string(k)))});
        p.connected_diagram = d.is_connected();
        p.diagram_chi = seifert_data(d).chi;
        p.c_minus = d.c_minus();
        int lk = 0;
        for (int i = 0; i < p.components; ++i)
            for (int j = i + 1; j < p.components; ++j) lk += linking_number(d, i, j);
        p.total_linking = lk;
        PositivityClass pc = classify(d);
        p.tag = pc.tag;
        p.tag_k = pc.k;
        if (p.components <= kMaxWeakPositivityComponents) p.weakly_positive_diagram = pc.weak.has_value();
        return p;
    }

private:
    std::string compute_text(const Diagram& d, const std::string& id) {
        if (id == "homfly") return homfly(d, budget_).str();
        if (id == "conway") return conway(d, budget_).str();
        if (id == "jones") return jones_from_homfly(homfly(d, budget_)).str();
        if (id == "dubrovnik") return dubrovnik(d, budget_).str();
        if (id == "signature") return std::to_string(signature(d));
        if (id.rfind("lt:", 0) == 0) {
            auto slash = id.find('/');
            int n = std::stoi(id.substr(3, slash - 3)), k = std::stoi(id.substr(slash + 1));
            return std::to_string(levine_tristram(d, n, k));
        }
        fail(Errc::Internal, "unknown invariant id '" + id + "'");
    }

    std::uint64_t budget_;
    InvariantCache* cache_;
};

// ---------------------------------------------------------------------------
// Output helpers

namespace detail {

struct Sink {
    std::ostream* os;
    std::unique_ptr<std::ofstream> file;
};

inline Sink open_sink(const CliOptions& o, std::ostream& out) {
    Sink s{&out, nullptr};
    if (o.out) {
        s.file = std::make_unique<std::ofstream>(*o.out);
        if (!*s.file) fail(Errc::Io, "cannot write '" + *o.out + "'");
        s.os = s.file.get();
    }
    return s;
}

inline std::unique_ptr<InvariantCache> open_cache(const CliOptions& o) {
    if (!o.cache) return nullptr;
    return std::make_unique<InvariantCache>(*o.cache);
}

inline std::string complexity_str(const Complexity& c) {
    return "(" + std::to_string(c.crossings) + "," + std::to_string(c.rest) + ")";
}

inline std::string list_str(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// Per-item result: either text/JSON payload or an error.
struct ItemResult {
    std::string text;
    Json json;
    std::optional<ObstructionReport> report;
    std::string error;
    int code = kExitOk;
};

template <class F>
std::vector<ItemResult> run_items(const std::vector<InputItem>& items, int jobs, F&& body) {
    std::vector<ItemResult> res(items.size());
    parallel_for(static_cast<int>(items.size()), jobs, [&](int i) {
        const auto& it = items[i];
        if (!it.diagram) {
            res[i].error = it.error;
            res[i].code = exit_code_for(it.error_code);
            return;
        }
        try {
            body(it, res[i]);
        } catch (const Error& e) {
            res[i].error = e.what();
            res[i].code = exit_code_for(e.code());
        } catch (const std::exception& e) {
            res[i].error = std::string("Internal: ") + e.what();
            res[i].code = kExitInternal;
        }
    });
    return res;
}

inline int worst_code(const std::vector<ItemResult>& res) {
    int code = kExitOk;
    for (const auto& r : res) code = std::max(code, r.code);
    return code;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// invariants

inline const std::vector<std::string>& invariant_names() {
    static const std::vector<std::string> names{"conway", "homfly", "jones", "alexander", "dubrovnik", "signature",
                                                "det",    "lt",     "seifert", "bounds",  "bracket"};
    return names;
}

inline int cmd_invariants(const CliOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::string> want;
    for (const auto& n : invariant_names())
        if (o.invariants.count(n)) want.push_back(n);
    if (want.empty()) want = {"conway", "homfly", "jones", "signature", "det"};
    std::string format = o.format.empty() ? "text" : o.format;
    if (format != "text" && format != "json") fail(Errc::MalformedSyntax, "invariants supports --format text|json");

    auto items = gather_inputs(o);
    auto cache = detail::open_cache(o);
    Engine engine(o.budget, cache.get());
    bool bare = items.size() == 1 && format == "text";

    auto res = detail::run_items(items, o.jobs, [&](const InputItem& it, detail::ItemResult& r) {
        const Diagram& d = *it.diagram;
        std::string key = canonical_key(d);
        Json j = Json::object();
        std::vector<std::pair<std::string, std::string>> lines;
        auto emit = [&](const std::string& k, const std::string& v) {
            lines.push_back({k, v});
            j[k] = v;
        };
        auto P = [&] { return Poly2::parse(engine.get(d, key, "homfly"), 'v', 'z'); };
        for (const auto& w : want) {
            if (w == "conway") emit("conway", conway_from_homfly(P()).str());
            else if (w == "homfly") emit("homfly", P().str());
            else if (w == "jones") emit("jones", jones_from_homfly(P()).str());
            else if (w == "alexander") emit("alexander", alexander_from_conway(conway_from_homfly(P())).str());
            else if (w == "dubrovnik") emit("dubrovnik", engine.get(d, key, "dubrovnik"));
            else if (w == "signature") emit("signature", engine.get(d, key, "signature"));
            else if (w == "det") emit("det", determinant_from_conway(conway_from_homfly(P())).str());
            else if (w == "bracket") emit("bracket", jones_bracket(d, o.budget).str());
            else if (w == "lt") {
                for (auto [n, k] : o.omegas)
                    emit("sigma_omega(" + std::to_string(n) + "," + std::to_string(k) + ")",
                         engine.get(d, key, "lt:" + std::to_string(n) + "/" + std::to_string(k)));
            } else if (w == "seifert") {
                SeifertData sd = seifert_data(d);
                emit("seifert_circles", std::to_string(sd.s));
                emit("crossings", std::to_string(sd.c));
                emit("chi(D)", std::to_string(sd.chi));
                emit("canonical_genus", std::to_string(sd.genus));
                emit("c_minus", std::to_string(d.c_minus()));
            } else if (w == "bounds") {
                for (auto v : {BoundVariant::General, BoundVariant::Sap}) {
                    std::string nm = v == BoundVariant::General ? "sigma_lower_bound" : "sigma_lower_bound_sap";
                    try {
                        emit(nm, signature_lower_bound(d, v).value.str());
                    } catch (const Error& e) {
                        if (e.code() != Errc::NotSAP && e.code() != Errc::NotReduced && e.code() != Errc::DisconnectedDiagram) throw;
                        emit(nm, std::string("n/a (") + errc_name(e.code()) + ")");
                    }
                }
            }
        }
        std::string text;
        if (bare && lines.size() == 1) {
            text = lines.front().second + "\n";
        } else {
            if (items.size() > 1) text += it.name + "\n";
            for (const auto& [k, v] : lines) text += (items.size() > 1 ? "  " : "") + k + ": " + v + "\n";
        }
        r.text = text;
        r.json = Json{{"name", it.name}, {"invariants", j}};
    });
    if (cache) cache->save();

    auto sink = detail::open_sink(o, out);
    Json arr = Json::array();
    for (size_t i = 0; i < res.size(); ++i) {
        if (!res[i].error.empty()) {
            err << items[i].name << ": " << res[i].error << "\n";
            if (format == "json") arr.push_back(Json{{"name", items[i].name}, {"error", res[i].error}});
            continue;
        }
        if (format == "json") arr.push_back(res[i].json);
        else *sink.os << res[i].text;
    }
    if (format == "json") *sink.os << (items.size() == 1 && res[0].error.empty() ? res[0].json : arr).dump(2) << "\n";
    return detail::worst_code(res);
}

// ---------------------------------------------------------------------------
// classify

inline std::string describe_class(const Diagram& d, const PositivityClass& pc) {
    std::string s = pc.str();
    using detail::list_str;
    if (pc.tag != PositivityTag::Positive && pc.tag != PositivityTag::WeaklyPositiveOnly && pc.tag != PositivityTag::None &&
        pc.overarc) {
        const Overarc& ov = *pc.overarc;
        s += " (overarc component=" + std::to_string(ov.component) + " first_arc=" + std::to_string(ov.first_arc) +
             " over=" + list_str(ov.over) + ")";
    }
    if (pc.tag == PositivityTag::WeaklyPositiveOnly && pc.weak)
        s += " (witness order=" + list_str(pc.weak->order) + " basepoint=" + list_str(pc.weak->basepoints) + ")";
    (void)d;
    return s;
}

inline Json class_to_json(const PositivityClass& pc) {
    Json j{{"class", tag_name(pc.tag)}, {"k", pc.k}, {"wsap", pc.is_wsap()}, {"sap", pc.is_sap()}};
    if (pc.overarc)
        j["overarc"] = Json{{"component", pc.overarc->component}, {"first_arc", pc.overarc->first_arc},
                            {"over", pc.overarc->over}, {"length", pc.overarc->length()}};
    if (pc.weak) j["weak_positivity"] = Json{{"order", pc.weak->order}, {"basepoints", pc.weak->basepoints}};
    return j;
}

inline int cmd_classify(const CliOptions& o, std::ostream& out, std::ostream& err) {
    std::string format = o.format.empty() ? "text" : o.format;
    if (format != "text" && format != "json") fail(Errc::MalformedSyntax, "classify supports --format text|json");
    auto items = gather_inputs(o);
    auto res = detail::run_items(items, o.jobs, [&](const InputItem& it, detail::ItemResult& r) {
        PositivityClass pc = classify(*it.diagram);
        r.text = (items.size() > 1 ? it.name + ": " : "") + describe_class(*it.diagram, pc) + "\n";
        r.json = class_to_json(pc);
        r.json["name"] = it.name;
    });
    auto sink = detail::open_sink(o, out);
    Json arr = Json::array();
    for (size_t i = 0; i < res.size(); ++i) {
        if (!res[i].error.empty()) {
            err << items[i].name << ": " << res[i].error << "\n";
            continue;
        }
        if (format == "json") arr.push_back(res[i].json);
        else *sink.os << res[i].text;
    }
    if (format == "json") *sink.os << (items.size() == 1 && res[0].error.empty() ? res[0].json : arr).dump(2) << "\n";
    return detail::worst_code(res);
}

// ---------------------------------------------------------------------------
// obstruct

// Cross-checks of supplied table values against computed ones; a mismatch
// is flagged, never resolved in favour of either side.
inline std::vector<TestRecord> table_checks(const TableEntry& e, const InvariantProfile& p) {
    using namespace detail;
    std::vector<TestRecord> out;
    const std::string cs = "supplied signature agrees with the computed one";
    if (!e.known_signature) out.push_back(unknown("data.signature", cs, "signature not supplied"));
    else if (*p.signature == *e.known_signature) out.push_back(pass("data.signature", cs, "supplied = " + str(*e.known_signature), "computed = " + str(*p.signature), "match"));
    else out.push_back(unknown("data.signature", cs, "mismatch: supplied " + str(*e.known_signature) + ", computed " + str(*p.signature)));
    const std::string cd = "supplied determinant agrees with the computed one";
    if (!e.known_det) out.push_back(unknown("data.determinant", cd, "determinant not supplied"));
    else if (*p.det == *e.known_det) out.push_back(pass("data.determinant", cd, "supplied = " + str(*e.known_det), "computed = " + str(*p.det), "match"));
    else out.push_back(unknown("data.determinant", cd, "mismatch: supplied " + str(*e.known_det) + ", computed " + str(*p.det)));
    return out;
}

inline int cmd_obstruct(const CliOptions& o, std::ostream& out, std::ostream& err) {
    std::string format = o.format.empty() ? "csv" : o.format;
    if (format != "csv" && format != "json") fail(Errc::MalformedSyntax, "obstruct supports --format csv|json");
    auto items = gather_inputs(o);
    auto cache = detail::open_cache(o);
    Engine engine(o.budget, cache.get());
    bool dub = o.dubrovnik || o.target == Target::Positive || o.target == Target::AlmostPositive;

    auto res = detail::run_items(items, o.jobs, [&](const InputItem& it, detail::ItemResult& r) {
        InvariantProfile p = engine.profile(it.name, *it.diagram, o.omegas, dub);
        if (it.entry) p.known = it.entry->known;
        ObstructionReport rep = run_battery(p, o.target);
        if (it.entry) {
            auto extra = table_checks(*it.entry, p);
            rep.records.insert(rep.records.end(), extra.begin(), extra.end());
        }
        r.json = report_to_json(rep, it.entry ? it.entry->known_raw : Json());
        r.report = std::move(rep);
    });
    if (cache) cache->save();

    auto sink = detail::open_sink(o, out);
    int fails = 0, consistent = 0, errors = 0;
    Json arr = Json::array();
    if (format == "csv") *sink.os << csv_header();
    for (size_t i = 0; i < res.size(); ++i) {
        if (!res[i].report) {
            ++errors;
            err << items[i].name << ": " << res[i].error << "\n";
            if (format == "csv")
                *sink.os << detail::csv_field(items[i].name) << ",input,table entry could not be evaluated,Inconclusive,,,"
                         << detail::csv_field(res[i].error) << "\n";
            else
                arr.push_back(Json{{"name", items[i].name}, {"error", res[i].error}});
            continue;
        }
        (res[i].report->verdict == Verdict::NotWSAP ? fails : consistent)++;
        if (format == "csv") *sink.os << to_csv_rows(*res[i].report);
        else arr.push_back(res[i].json);
    }
    if (format == "json") *sink.os << arr.dump(2) << "\n";
    std::ostream& summary = o.out ? out : err;
    summary << "summary: target=" << target_name(o.target) << " entries=" << items.size() << " NotWSAP=" << fails
            << " ConsistentWithWSAP=" << consistent << " errors=" << errors << "\n";
    // Per-entry failures are reported inline; only a resource or internal
    // failure changes the exit status of a table run.
    int code = detail::worst_code(res);
    return o.table && code == kExitInput ? kExitOk : code;
}

// ---------------------------------------------------------------------------
// skein-tree

inline int cmd_skein_tree(const CliOptions& o, std::ostream& out, std::ostream& err) {
    std::string format = o.format.empty() ? "text" : o.format;
    if (format != "text" && format != "json") fail(Errc::MalformedSyntax, "skein-tree supports --format text|json");
    auto items = gather_inputs(o);
    using detail::complexity_str;
    auto res = detail::run_items(items, o.jobs, [&](const InputItem& it, detail::ItemResult& r) {
        const Diagram& d = *it.diagram;
        PositivityClass pc = classify(d);
        if (!pc.is_wsap()) fail(Errc::NotWSAP, std::string("diagram is ") + tag_name(pc.tag));
        UnknottingSequence seq = standard_unknotting_sequence(d, o.budget);
        std::ostringstream os;
        if (items.size() > 1) os << it.name << "\n";
        auto c0 = complexity(d);
        os << "diagram: " << to_pd(d) << "\n";
        os << "class: " << pc.str() << "  complexity " << (c0 ? complexity_str(*c0) : "n/a") << "\n";
        Json steps = Json::array();
        int i = 0;
        for (const auto& s : seq.steps) {
            const SkeinTriple& t = s.triple;
            Poly1 n0 = conway(t.zero, o.budget), nm = conway(t.minus, o.budget);
            os << "step " << ++i << ": crossing " << s.crossing << " of " << to_pd(s.diagram) << "\n";
            os << "  D+ complexity " << complexity_str(t.c_plus) << "\n";
            os << "  D0 complexity " << complexity_str(t.c_zero) << "  nabla = " << n0.str() << "\n";
            os << "  D- complexity " << complexity_str(t.c_minus) << "  nabla = " << nm.str() << "\n";
            steps.push_back(Json{{"crossing", s.crossing},
                                 {"plus", to_pd(t.plus)},
                                 {"zero", to_pd(t.zero)},
                                 {"minus", to_pd(t.minus)},
                                 {"complexity_plus", complexity_str(t.c_plus)},
                                 {"complexity_zero", complexity_str(t.c_zero)},
                                 {"complexity_minus", complexity_str(t.c_minus)},
                                 {"conway_zero", n0.str()},
                                 {"conway_minus", nm.str()}});
        }
        if (seq.steps.empty() && d.num_crossings() > 0) {
            // The input is already terminal; show the triple it would be resolved by.
            std::vector<Overarc> cands;
            if (d.c_minus() > 0) cands.push_back(*negative_overarc(d));
            else cands = overarcs(d);
            for (const auto& ov : cands) {
                if (ov.closed) continue;
                try {
                    SkeinTriple t = standard_skein_triple(d, ov);
                    os << "step 1: crossing " << t.crossing << " of " << to_pd(t.plus) << " (already terminal)\n";
                    os << "  D+ complexity " << complexity_str(t.c_plus) << "\n";
                    os << "  D0 complexity " << complexity_str(t.c_zero) << "  nabla = " << conway(t.zero, o.budget).str() << "\n";
                    os << "  D- complexity " << complexity_str(t.c_minus) << "  nabla = " << conway(t.minus, o.budget).str() << "\n";
                    break;
                } catch (const Error& e) {
                    if (e.code() != Errc::NoPositiveCrossing) throw;
                }
            }
        }
        os << "terminal: " << to_pd(seq.terminal) << "  nabla = " << seq.terminal_conway.str()
           << (seq.reached_hopf_sum ? "  (Hopf-sum terminal)" : "  (no further standard triple)") << "\n";
        r.text = os.str();
        r.json = Json{{"name", it.name},
                      {"class", pc.str()},
                      {"steps", steps},
                      {"terminal", to_pd(seq.terminal)},
                      {"terminal_conway", seq.terminal_conway.str()},
                      {"hopf_sum_terminal", seq.reached_hopf_sum}};
    });
    auto sink = detail::open_sink(o, out);
    Json arr = Json::array();
    for (size_t i = 0; i < res.size(); ++i) {
        if (!res[i].error.empty()) {
            err << items[i].name << ": " << res[i].error << "\n";
            continue;
        }
        if (format == "json") arr.push_back(res[i].json);
        else *sink.os << res[i].text;
    }
    if (format == "json") *sink.os << (items.size() == 1 && res[0].error.empty() ? res[0].json : arr).dump(2) << "\n";
    return detail::worst_code(res);
}

}  // namespace knotpos
