#pragma once

// Obstruction battery.  An InvariantProfile collects the computed
// invariants of a link together with optional externally supplied data;
// each test family turns one necessary condition for weak successive
// almost positivity (or a stronger class) into a three-valued record.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "positivity.hpp"
#include "signature.hpp"

namespace knotpos {

// ---------------------------------------------------------------------------
// Profiles

struct ExternalData {
    std::optional<int> genus;
    std::optional<int> g4;
    std::optional<int> chi;
    std::optional<int> unknotting;
    std::optional<int> u_plus;
    std::optional<int> d_plus_trefoil;
    std::optional<int> tau;
    std::optional<int> splitting_number;
    std::optional<int> u_comp;
    std::optional<bool> fibered;
    std::optional<bool> prime;
    std::optional<bool> split;
    std::optional<bool> bennequin_sharp;
    std::optional<bool> nontrivial;
};

struct LtValue {
    int n = 2;
    int k = 1;
    int value = 0;
};

struct InvariantProfile {
    std::string name;
    int components = 1;
    std::optional<Poly1> conway;
    std::optional<Poly2> homfly;
    std::optional<Poly1> jones;
    std::optional<Poly2> dubrovnik;
    std::optional<int> signature;
    std::optional<Int> det;
    std::vector<LtValue> levine_tristram;

    // Data read off the diagram the profile was built from.
    std::optional<int> diagram_chi;
    std::optional<int> c_minus;
    std::optional<PositivityTag> tag;
    int tag_k = 0;
    std::optional<bool> weakly_positive_diagram;
    std::optional<int> total_linking;
    std::optional<bool> connected_diagram;

    ExternalData known;
};

inline std::vector<std::pair<int, int>> default_omegas() {
    return {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {6, 1}, {8, 1}, {8, 3}};
}

struct ProfileOptions {
    bool homfly = true;
    bool dubrovnik = false;
    bool signature = true;
    bool levine_tristram = true;
    bool classify = true;
    std::vector<std::pair<int, int>> omegas = default_omegas();
    std::uint64_t budget = kDefaultBudget;
};

// Levine-Tristram signature of any diagram; split pieces add up.
inline int levine_tristram(const Diagram& d, int n, int k) {
    int s = 0;
    for (const auto& piece : d.is_connected() ? std::vector<Diagram>{d} : split_pieces(d))
        s += levine_tristram(seifert_matrix(piece), n, k);
    return s;
}

inline InvariantProfile build_profile(const std::string& name, const Diagram& d, const ProfileOptions& opts = {}) {
    InvariantProfile p;
    p.name = name;
    p.components = d.num_components();
    if (opts.homfly) {
        p.homfly = homfly(d, opts.budget);
        p.conway = conway_from_homfly(*p.homfly);
        p.jones = jones_from_homfly(*p.homfly);
    } else {
        p.conway = conway(d, opts.budget);
    }
    if (opts.dubrovnik) p.dubrovnik = dubrovnik(d, opts.budget);
    p.det = determinant_from_conway(*p.conway);
    if (opts.signature) p.signature = signature(d);
    if (opts.levine_tristram)
        for (auto [n, k] : opts.omegas) p.levine_tristram.push_back({n, k, levine_tristram(d, n, k)});

    p.connected_diagram = d.is_connected();
    p.diagram_chi = seifert_data(d).chi;
    p.c_minus = d.c_minus();
    int lk = 0;
    for (int i = 0; i < p.components; ++i)
        for (int j = i + 1; j < p.components; ++j) lk += linking_number(d, i, j);
    p.total_linking = lk;
    if (opts.classify) {
        PositivityClass pc = classify(d);
        p.tag = pc.tag;
        p.tag_k = pc.k;
        if (p.components <= kMaxWeakPositivityComponents) p.weakly_positive_diagram = pc.weak.has_value();
    }
    return p;
}

// ---------------------------------------------------------------------------
// Records and reports

enum class Outcome { Fail, Pass, Inconclusive };

inline const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Fail: return "Fail";
        case Outcome::Pass: return "Pass";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct TestRecord {
    std::string id;
    std::string citation;
    Outcome outcome = Outcome::Inconclusive;
    std::string lhs;
    std::string rhs;
    std::string reason;
};

enum class Verdict { NotWSAP, ConsistentWithWSAP };

inline const char* verdict_name(Verdict v) { return v == Verdict::NotWSAP ? "NotWSAP" : "ConsistentWithWSAP"; }

enum class Target { Wsap, Sap, Positive, AlmostPositive };

inline const char* target_name(Target t) {
    switch (t) {
        case Target::Wsap: return "wsap";
        case Target::Sap: return "sap";
        case Target::Positive: return "positive";
        case Target::AlmostPositive: return "almost-positive";
    }
    return "?";
}

inline Target parse_target(std::string s) {
    std::replace(s.begin(), s.end(), '_', '-');
    if (s == "wsap") return Target::Wsap;
    if (s == "sap") return Target::Sap;
    if (s == "positive") return Target::Positive;
    if (s == "almost-positive") return Target::AlmostPositive;
    fail(Errc::MalformedSyntax, "unknown target '" + s + "'");
}

struct ObstructionReport {
    std::string name;
    Target target = Target::Wsap;
    std::vector<TestRecord> records;
    Verdict verdict = Verdict::ConsistentWithWSAP;
    ExternalData known;

    int count(Outcome o) const {
        return static_cast<int>(std::count_if(records.begin(), records.end(), [o](const TestRecord& r) { return r.outcome == o; }));
    }
    const TestRecord* find(const std::string& id) const {
        for (const auto& r : records)
            if (r.id == id) return &r;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Shared helpers

namespace detail {

inline std::string str(const Int& x) { return x.str(); }
inline std::string str(int x) { return std::to_string(x); }

inline std::string half_str(int e2) {
    if (e2 % 2 == 0) return std::to_string(e2 / 2);
    return std::to_string(e2) + "/2";
}

inline Int binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline TestRecord pass(std::string id, std::string cite, std::string lhs, std::string rhs, std::string reason) {
    return {std::move(id), std::move(cite), Outcome::Pass, std::move(lhs), std::move(rhs), std::move(reason)};
}

inline TestRecord failed(std::string id, std::string cite, std::string lhs, std::string rhs, std::string reason) {
    return {std::move(id), std::move(cite), Outcome::Fail, std::move(lhs), std::move(rhs), std::move(reason)};
}

inline TestRecord unknown(std::string id, std::string cite, std::string reason) {
    return {std::move(id), std::move(cite), Outcome::Inconclusive, "", "", std::move(reason)};
}

enum class Rel { Le, Ge, Eq, Lt, Gt };

inline const char* rel_text(Rel r) {
    switch (r) {
        case Rel::Le: return "<=";
        case Rel::Ge: return ">=";
        case Rel::Eq: return "=";
        case Rel::Lt: return "<";
        case Rel::Gt: return ">";
    }
    return "?";
}

inline bool holds(const Int& a, Rel r, const Int& b) {
    switch (r) {
        case Rel::Le: return a <= b;
        case Rel::Ge: return a >= b;
        case Rel::Eq: return a == b;
        case Rel::Lt: return a < b;
        case Rel::Gt: return a > b;
    }
    return false;
}

inline TestRecord compare(std::string id, std::string cite, const std::string& lname, const Int& lval, Rel r,
                          const std::string& rname, const Int& rval) {
    std::string lhs = lname + " = " + lval.str();
    std::string rhs = rname == rval.str() ? rname : rname + " = " + rval.str();
    std::string want = lname + " " + rel_text(r) + " " + rname;
    if (holds(lval, r, rval)) return pass(std::move(id), std::move(cite), lhs, rhs, want);
    return failed(std::move(id), std::move(cite), lhs, rhs, want + " violated");
}

inline std::string hc(int i, int j) { return "c_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

// Splitness as far as it can be decided: knots and links with nonzero
// Conway polynomial are non-split.
inline std::optional<bool> nonsplit(const InvariantProfile& p) {
    if (p.components == 1) return true;
    if (p.known.split) return !*p.known.split;
    if (p.conway && !p.conway->is_zero()) return true;
    return std::nullopt;
}

inline std::optional<bool> nontrivial_knot(const InvariantProfile& p) {
    if (p.components != 1) return std::nullopt;
    if (p.known.nontrivial) return *p.known.nontrivial;
    if (p.conway && !p.conway->is_one()) return true;
    if (p.jones && !p.jones->is_one()) return true;
    if (p.homfly && !p.homfly->is_one()) return true;
    return std::nullopt;
}

struct ChiValue {
    int value;
    std::string source;
};

// chi(L) from supplied data, or from a diagram whose canonical surface is
// known to be minimal (positive and almost positive diagrams).
inline std::optional<ChiValue> link_chi(const InvariantProfile& p) {
    if (p.known.chi) return ChiValue{*p.known.chi, "supplied chi(L)"};
    if (p.known.genus && nonsplit(p) == true) return ChiValue{2 - 2 * *p.known.genus - p.components, "supplied genus"};
    if (p.tag && p.diagram_chi && p.connected_diagram == true) {
        if (*p.tag == PositivityTag::Positive || *p.tag == PositivityTag::AlmostPositiveI)
            return ChiValue{*p.diagram_chi, "canonical surface of the diagram"};
        if (*p.tag == PositivityTag::AlmostPositiveII)
            return ChiValue{*p.diagram_chi + 2, "canonical surface of a type II diagram"};
    }
    return std::nullopt;
}

inline Poly2 trefoil_homfly() { return Poly2::parse("2*v^2 - v^4 + v^2*z^2", 'v', 'z'); }
inline Poly2 hopf_homfly() { return Poly2::parse("v*z^-1 - v^3*z^-1 + v*z", 'v', 'z'); }

// a_{m-1+2i} >= C(ell, i) for i = 1..ell.
inline TestRecord binomial_test(std::string id, std::string cite, const InvariantProfile& p, int ell,
                                const std::string& ell_text) {
    int base = p.components - 1;
    for (int i = 1; i <= ell; ++i) {
        Int a = p.conway->coeff(base + 2 * i);
        Int b = binomial(ell, i);
        if (a < b)
            return failed(std::move(id), std::move(cite), "a_" + str(base + 2 * i) + " = " + str(a),
                          "C(" + str(ell) + "," + str(i) + ") = " + str(b),
                          "a_{#L-1+2i} >= C(l,i) violated with l = " + ell_text);
    }
    return pass(std::move(id), std::move(cite), "a_{#L-1+2i}", "C(" + str(ell) + ",i)",
                "holds for i = 1.." + str(ell) + " with l = " + ell_text);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Conway polynomial

inline std::vector<TestRecord> conway_tests(const InvariantProfile& p) {
    using namespace detail;
    std::vector<TestRecord> out;
    const int m = p.components;
    const std::string cite = "Conway polynomial of a non-split w.s.a.p. link";
    auto ns = nonsplit(p);
    bool have = p.conway.has_value();
    bool ready = have && ns == true;
    std::string why = !have ? "Conway polynomial unavailable" : "splitness undecided or link split";

    // (iii) strict positivity.
    if (!ready) {
        out.push_back(unknown("conway.iii.positive", cite + ", (iii) strict positivity", why));
    } else if (p.conway->is_zero()) {
        out.push_back(failed("conway.iii.positive", cite + ", (iii) strict positivity", "nabla = 0", "nonzero",
                             "a non-split link has nonzero Conway polynomial"));
    } else {
        const Poly1& n = *p.conway;
        std::optional<TestRecord> bad;
        for (int j = m - 1; j <= n.max_deg() && !bad; j += 2)
            if (n.coeff(j) <= 0)
                bad = failed("conway.iii.positive", cite + ", (iii) strict positivity", "a_" + str(j) + " = " + str(n.coeff(j)),
                             "0", "a_j > 0 for j = #L-1, #L+1, ..., max deg violated");
        if (!bad && n.min_deg() < m - 1)
            bad = failed("conway.iii.positive", cite + ", (iii) strict positivity", "min deg nabla = " + str(n.min_deg()),
                         "#L-1 = " + str(m - 1), "coefficients below degree #L-1 must vanish");
        out.push_back(bad ? *bad
                          : pass("conway.iii.positive", cite + ", (iii) strict positivity", "a_{#L-1+2i}", "0",
                                 "all coefficients a_" + str(m - 1) + "..a_" + str(n.max_deg()) + " positive"));
    }

    // (i) binomial lower bounds, one record per source of a 4-genus bound.
    const std::string ci = cite + ", (i) a_{#L-1+2i} >= C(g4,i)";
    if (!ready || !p.signature) {
        out.push_back(unknown("conway.i.binomial_sigma", ci, ready ? "signature unavailable" : why));
    } else {
        int excess = *p.signature - m + 1;
        int ell = excess > 0 ? (excess + 1) / 2 : 0;
        out.push_back(binomial_test("conway.i.binomial_sigma", ci, p, ell,
                                    "ceil((sigma-#L+1)/2) = " + str(ell)));
    }
    if (!ready || !p.known.tau || m != 1) {
        out.push_back(unknown("conway.i.binomial_tau", ci, !ready ? why : m != 1 ? "tau bound applies to knots" : "tau not supplied"));
    } else {
        int ell = std::abs(*p.known.tau);
        out.push_back(binomial_test("conway.i.binomial_tau", ci, p, ell, "|tau| = " + str(ell)));
    }
    if (!ready || !p.known.g4) {
        out.push_back(unknown("conway.i.binomial_g4", ci, ready ? "g4 not supplied" : why));
    } else {
        out.push_back(binomial_test("conway.i.binomial_g4", ci, p, *p.known.g4, "g4 = " + str(*p.known.g4)));
    }

    // (ii) degree.
    const std::string cii = cite + ", (ii) max deg nabla = 1 - chi(L)";
    auto chi = link_chi(p);
    if (!ready || !chi || p.conway->is_zero()) {
        out.push_back(unknown("conway.ii.degree", cii, !ready ? why : "chi(L) unknown"));
    } else {
        TestRecord r = compare("conway.ii.degree", cii, "max deg nabla", p.conway->max_deg(), Rel::Eq, "1-chi(L)",
                               1 - chi->value);
        r.reason += " (chi(L) from " + chi->source + ")";
        out.push_back(r);
    }
    const std::string cdd = "Conway degree bounded by the canonical genus of any diagram";
    if (!have || !p.diagram_chi) {
        out.push_back(unknown("conway.ii.degree_diagram", cdd, "diagram data unavailable"));
    } else if (p.conway->is_zero()) {
        out.push_back(pass("conway.ii.degree_diagram", cdd, "nabla = 0", "", "vacuous"));
    } else {
        out.push_back(compare("conway.ii.degree_diagram", cdd, "max deg nabla", p.conway->max_deg(), Rel::Le, "1-chi(D)",
                              1 - *p.diagram_chi));
    }

    // (iv) fiberedness versus monicity.
    const std::string civ = cite + ", (iv) fibered iff monic";
    if (!ready || !p.known.fibered || p.conway->is_zero()) {
        out.push_back(unknown("conway.iv.fibered", civ, !ready ? why : "fiberedness not supplied"));
    } else {
        Int lead = p.conway->leading_coeff();
        bool monic = lead == 1;
        std::string lhs = "leading coefficient = " + str(lead);
        std::string rhs = std::string("fibered = ") + (*p.known.fibered ? "true" : "false");
        if (monic == *p.known.fibered)
            out.push_back(pass("conway.iv.fibered", civ, lhs, rhs, "monicity matches fiberedness"));
        else
            out.push_back(failed("conway.iv.fibered", civ, lhs, rhs, "monic iff fibered violated"));
    }

    // Characterisation of the trefoil by a_2 = 1.
    const std::string ct = "a w.s.a.p. knot with a_2 = 1 is the positive trefoil";
    if (m != 1) {
        out.push_back(pass("conway.char_trefoil", ct, "", "", "applies to knots only"));
    } else if (!have) {
        out.push_back(unknown("conway.char_trefoil", ct, "Conway polynomial unavailable"));
    } else if (p.conway->coeff(2) != 1) {
        out.push_back(pass("conway.char_trefoil", ct, "a_2 = " + str(p.conway->coeff(2)), "1", "hypothesis a_2 = 1 not met"));
    } else {
        Poly1 tref = Poly1::parse("1 + z^2", 'z');
        if (*p.conway != tref) {
            out.push_back(failed("conway.char_trefoil", ct, "nabla = " + p.conway->str(), "nabla(3_1) = 1 + z^2",
                                 "a_2 = 1 but the knot is not the trefoil"));
        } else if (p.homfly && *p.homfly != trefoil_homfly()) {
            out.push_back(failed("conway.char_trefoil", ct, "P = " + p.homfly->str(), "P(3_1) = " + trefoil_homfly().str(),
                                 "a_2 = 1 but the knot is not the trefoil"));
        } else if (p.homfly) {
            out.push_back(pass("conway.char_trefoil", ct, "P = " + p.homfly->str(), "P(3_1)", "HOMFLY polynomial is that of the trefoil"));
        } else {
            out.push_back(unknown("conway.char_trefoil", ct, "a_2 = 1 and nabla = 1 + z^2; HOMFLY unavailable"));
        }
    }

    // An intermediate coefficient equal to one.
    const std::string cj = "a_j = 1 for j > #L-1 forces j = max deg nabla";
    if (!ready || p.conway->is_zero()) {
        out.push_back(unknown("conway.a_j_one", cj, why));
    } else {
        const Poly1& n = *p.conway;
        std::optional<TestRecord> bad;
        for (int j = m; j < n.max_deg() && !bad; ++j)
            if (n.coeff(j) == 1)
                bad = failed("conway.a_j_one", cj, "a_" + str(j) + " = 1", "max deg nabla = " + str(n.max_deg()),
                             "a_j = 1 below the top degree");
        out.push_back(bad ? *bad : pass("conway.a_j_one", cj, "", "", "no intermediate coefficient equals 1"));
    }

    // nabla(1) >= 2^{g4}, one record per 4-genus source.
    const std::string c1 = "nabla(1) >= 2^{g4} >= 2^{sigma/2} for w.s.a.p. knots";
    auto at_one = [&](const std::string& id, std::optional<int> ell, const std::string& src) {
        if (m != 1) return pass(id, c1, "", "", "applies to knots only");
        if (!have) return unknown(id, c1, "Conway polynomial unavailable");
        if (!ell) return unknown(id, c1, src + " not available");
        int e = std::max(0, *ell);
        Int rhs = Int(1) << e;
        TestRecord r = compare(id, c1, "nabla(1)", p.conway->sum_of_coeffs(), Rel::Ge, "2^" + str(e), rhs);
        r.reason += " (exponent from " + src + ")";
        return r;
    };
    out.push_back(at_one("conway.at_one_sigma", p.signature ? std::optional<int>(*p.signature / 2) : std::nullopt, "sigma/2"));
    out.push_back(at_one("conway.at_one_g4", p.known.g4, "g4"));
    out.push_back(at_one("conway.at_one_tau", p.known.tau ? std::optional<int>(std::abs(*p.known.tau)) : std::nullopt, "|tau|"));

    // Weakly positive prime links: a_{#L-1} >= lk >= #L unless Hopf.
    const std::string cw = "non-split prime weakly positive links other than the Hopf link have a_{#L-1} >= lk >= #L";
    if (m == 1) {
        out.push_back(pass("conway.wp_linking", cw, "", "", "applies to links only"));
    } else if (!ready) {
        out.push_back(unknown("conway.wp_linking", cw, why));
    } else if (!p.known.prime) {
        out.push_back(unknown("conway.wp_linking", cw, "primeness not supplied"));
    } else if (!*p.known.prime) {
        out.push_back(pass("conway.wp_linking", cw, "", "", "hypothesis not met: link is composite"));
    } else {
        Int a = p.conway->coeff(m - 1);
        bool maybe_hopf = m == 2 && *p.conway == Poly1::parse("z", 'z') && (!p.homfly || *p.homfly == hopf_homfly());
        if (maybe_hopf) {
            out.push_back(unknown("conway.wp_linking", cw, "invariants agree with the Hopf link"));
        } else if (p.total_linking && a < *p.total_linking) {
            out.push_back(compare("conway.wp_linking", cw, "a_" + str(m - 1), a, Rel::Ge, "lk(L)", *p.total_linking));
        } else if (p.total_linking && *p.total_linking < m) {
            out.push_back(compare("conway.wp_linking", cw, "lk(L)", *p.total_linking, Rel::Ge, "#L", m));
        } else {
            out.push_back(compare("conway.wp_linking", cw, "a_" + str(m - 1), a, Rel::Ge, "#L", m));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// HOMFLY polynomial

inline std::vector<TestRecord> homfly_tests(const InvariantProfile& p) {
    using namespace detail;
    std::vector<TestRecord> out;
    const int m = p.components;
    const std::string cite = "HOMFLY polynomial of a w.s.a.p. link";
    if (!p.homfly) {
        for (const char* id : {"homfly.i-a", "homfly.i-b", "homfly.i-c", "homfly.i-d", "homfly.i-d_top", "homfly.i-e",
                               "homfly.ii", "homfly.iii", "homfly.iii_knot"})
            out.push_back(unknown(id, cite, "HOMFLY polynomial unavailable"));
        return out;
    }
    const Poly2& P = *p.homfly;
    auto ns = nonsplit(p);

    {
        std::optional<TestRecord> bad;
        for (const auto& [key, c] : P.terms())
            if (key.first < key.second) {
                bad = failed("homfly.i-a", cite + ", (i-a) c_{i,j} = 0 for i < j", hc(key.first, key.second) + " = " + str(c),
                             "0", "nonzero coefficient with v-degree below z-degree");
                break;
            }
        out.push_back(bad ? *bad : pass("homfly.i-a", cite + ", (i-a) c_{i,j} = 0 for i < j", "", "", "no term with i < j"));
    }
    {
        std::optional<TestRecord> bad;
        Int diag = 0;
        for (const auto& [key, c] : P.terms())
            if (key.first == key.second) {
                diag += c;
                if (c < 0 && !bad)
                    bad = failed("homfly.i-b", cite + ", (i-b) c_{j,j} >= 0", hc(key.first, key.first) + " = " + str(c), "0",
                                 "negative diagonal coefficient");
            }
        out.push_back(bad ? *bad : pass("homfly.i-b", cite + ", (i-b) c_{j,j} >= 0", "", "", "all diagonal coefficients non-negative"));
        out.push_back(compare("homfly.i-c", cite + ", (i-c) sum of c_{i,i} = 1", "sum c_{i,i}", diag, Rel::Eq, "1", 1));
    }

    auto top_row_nonneg = [&](const std::string& id, const std::string& c, int N, const std::string& src) {
        for (const auto& [key, v] : P.terms())
            if (key.second == N && v < 0)
                return failed(id, c, hc(key.first, N) + " = " + str(v), "0", "negative coefficient in z-degree " + str(N) + " (" + src + ")");
        return pass(id, c, "", "", "z-degree " + str(N) + " row non-negative (" + src + ")");
    };
    auto chi = link_chi(p);
    const std::string cid = cite + ", (i-d) c_{i,1-chi(L)} >= 0 for non-split links";
    if (ns != true) out.push_back(unknown("homfly.i-d", cid, "splitness undecided or link split"));
    else if (!chi) out.push_back(unknown("homfly.i-d", cid, "chi(L) unknown"));
    else out.push_back(top_row_nonneg("homfly.i-d", cid, 1 - chi->value, "chi(L) from " + chi->source));
    const std::string cidt = cite + ", (i-d) with (ii): top z-degree row non-negative";
    if (ns != true) out.push_back(unknown("homfly.i-d_top", cidt, "splitness undecided or link split"));
    else out.push_back(top_row_nonneg("homfly.i-d_top", cidt, P.max_y(), "max deg_z P"));

    const std::string cie = cite + ", (i-e) fibered iff the top z-degree row is a single unit";
    if (!p.known.fibered) {
        out.push_back(unknown("homfly.i-e", cie, "fiberedness not supplied"));
    } else {
        Poly1 row = P.y_row(P.max_y());
        bool unit = row.size() == 1 && row.leading_coeff() == 1;
        std::string lhs = "P(z^" + str(P.max_y()) + ") = " + row.str();
        std::string rhs = std::string("fibered = ") + (*p.known.fibered ? "true" : "false");
        if (unit == *p.known.fibered) out.push_back(pass("homfly.i-e", cie, lhs, rhs, "top row shape matches fiberedness"));
        else out.push_back(failed("homfly.i-e", cie, lhs, rhs, "single-unit top row iff fibered violated"));
    }

    const std::string cii = cite + ", (ii) max deg_z P = 1 - chi(L)";
    if (!chi) {
        out.push_back(unknown("homfly.ii", cii, "chi(L) unknown"));
    } else {
        TestRecord r = compare("homfly.ii", cii, "max deg_z P", P.max_y(), Rel::Eq, "1-chi(L)", 1 - chi->value);
        r.reason += " (chi(L) from " + chi->source + ")";
        out.push_back(r);
    }

    const std::string ciii = cite + ", (iii) min deg_v P >= #L-1 for non-split links";
    if (ns != true) out.push_back(unknown("homfly.iii", ciii, "splitness undecided or link split"));
    else out.push_back(compare("homfly.iii", ciii, "min deg_v P", P.min_x(), Rel::Ge, "#L-1", m - 1));
    const std::string ciiik = cite + ", (iii) min deg_v P >= 2 for non-trivial knots";
    auto nt = nontrivial_knot(p);
    if (m != 1) out.push_back(pass("homfly.iii_knot", ciiik, "", "", "applies to knots only"));
    else if (!nt) out.push_back(unknown("homfly.iii_knot", ciiik, "non-triviality undecided"));
    else if (!*nt) out.push_back(pass("homfly.iii_knot", ciiik, "", "", "trivial knot exempt"));
    else out.push_back(compare("homfly.iii_knot", ciiik, "min deg_v P", P.min_x(), Rel::Ge, "2", 2));
    return out;
}

// ---------------------------------------------------------------------------
// Jones polynomial

inline std::vector<TestRecord> jones_tests(const InvariantProfile& p) {
    using namespace detail;
    std::vector<TestRecord> out;
    const int m = p.components;
    const std::string cite = "Jones polynomial of a w.s.a.p. link";
    const std::string ci = cite + ", (i) lowest coefficient has sign (-1)^{#L-1}";
    const std::string cii = cite + ", (ii) min deg_v P <= 2 min deg V <= max deg_z P";
    const std::string ciii = cite + ", (iii) min deg V >= 1 (knots) or (#L-1)/2 (links), non-trivial and non-split";
    if (!p.jones || p.jones->is_zero()) {
        out.push_back(unknown("jones.i", ci, "Jones polynomial unavailable"));
        out.push_back(unknown("jones.ii", cii, "Jones polynomial unavailable"));
        out.push_back(unknown("jones.iii", ciii, "Jones polynomial unavailable"));
        return out;
    }
    const Poly1& V = *p.jones;
    Int low = V.lowest_coeff();
    int want = (m - 1) % 2 == 0 ? 1 : -1;
    std::string lhs = "lowest coefficient = " + str(low);
    std::string rhs = std::string("sign ") + (want > 0 ? "+" : "-");
    if ((low > 0) == (want > 0)) out.push_back(pass("jones.i", ci, lhs, rhs, "sign matches (-1)^{#L-1}"));
    else out.push_back(failed("jones.i", ci, lhs, rhs, "sign of lowest coefficient is not (-1)^{#L-1}"));

    int twice_min = V.min_deg_half();
    if (!p.homfly) {
        out.push_back(unknown("jones.ii", cii, "HOMFLY polynomial unavailable"));
    } else {
        int lo = p.homfly->min_x(), hi = p.homfly->max_y();
        std::string l = "min deg_v P = " + str(lo) + ", 2 min deg V = " + str(twice_min);
        std::string r = "max deg_z P = " + str(hi);
        if (lo <= twice_min && twice_min <= hi) out.push_back(pass("jones.ii", cii, l, r, "chain holds"));
        else out.push_back(failed("jones.ii", cii, l, r, "min deg_v P <= 2 min deg V <= max deg_z P violated"));
    }

    auto ns = nonsplit(p);
    if (m == 1) {
        auto nt = nontrivial_knot(p);
        if (!nt) out.push_back(unknown("jones.iii", ciii, "non-triviality undecided"));
        else if (!*nt) out.push_back(pass("jones.iii", ciii, "", "", "trivial knot exempt"));
        else {
            std::string l = "min deg V = " + half_str(twice_min);
            if (twice_min >= 2) out.push_back(pass("jones.iii", ciii, l, "1", "min deg V >= 1"));
            else out.push_back(failed("jones.iii", ciii, l, "1", "min deg V >= 1 violated"));
        }
    } else if (ns != true) {
        out.push_back(unknown("jones.iii", ciii, "splitness undecided or link split"));
    } else {
        std::string l = "min deg V = " + half_str(twice_min);
        std::string r = "(#L-1)/2 = " + half_str(m - 1);
        if (twice_min >= m - 1) out.push_back(pass("jones.iii", ciii, l, r, "min deg V >= (#L-1)/2"));
        else out.push_back(failed("jones.iii", ciii, l, r, "min deg V >= (#L-1)/2 violated"));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Signature

inline std::vector<TestRecord> signature_tests(const InvariantProfile& p) {
    using namespace detail;
    std::vector<TestRecord> out;
    const int m = p.components;
    auto ns = nonsplit(p);

    const std::string cpos = "non-trivial w.s.a.p. knots have positive signature";
    if (m != 1) out.push_back(pass("signature.positive", cpos, "", "", "applies to knots only"));
    else if (!p.signature) out.push_back(unknown("signature.positive", cpos, "signature unavailable"));
    else {
        auto nt = nontrivial_knot(p);
        if (!nt) out.push_back(unknown("signature.positive", cpos, "non-triviality undecided"));
        else if (!*nt) out.push_back(pass("signature.positive", cpos, "", "", "trivial knot exempt"));
        else out.push_back(compare("signature.positive", cpos, "sigma", *p.signature, Rel::Gt, "0", 0));
    }

    const std::string cdeg = "#L-1 = min deg nabla <= sigma <= max deg nabla for non-split w.s.a.p. links";
    if (!p.signature || !p.conway) out.push_back(unknown("signature.deg_conway", cdeg, "signature or Conway polynomial unavailable"));
    else if (ns != true) out.push_back(unknown("signature.deg_conway", cdeg, "splitness undecided or link split"));
    else if (p.conway->is_zero()) out.push_back(unknown("signature.deg_conway", cdeg, "Conway polynomial vanishes"));
    else {
        int s = *p.signature, hi = p.conway->max_deg();
        std::string l = "#L-1 = " + str(m - 1) + ", sigma = " + str(s);
        std::string r = "max deg nabla = " + str(hi);
        if (m - 1 <= s && s <= hi) out.push_back(pass("signature.deg_conway", cdeg, l, r, "chain holds"));
        else out.push_back(failed("signature.deg_conway", cdeg, l, r, "#L-1 <= sigma <= max deg nabla violated"));
    }

    const std::string chopf = "nabla = z^{#L-1} iff a_{#L-1} = 1 and sigma = #L-1 for non-split w.s.a.p. links";
    if (!p.signature || !p.conway) out.push_back(unknown("signature.hopf_char", chopf, "signature or Conway polynomial unavailable"));
    else if (ns != true) out.push_back(unknown("signature.hopf_char", chopf, "splitness undecided or link split"));
    else {
        bool lhs_holds = p.conway->coeff(m - 1) == 1 && *p.signature == m - 1;
        bool rhs_holds = *p.conway == Poly1::monomial(1, m - 1, 'z');
        std::string l = "a_" + str(m - 1) + " = " + str(p.conway->coeff(m - 1)) + ", sigma = " + str(*p.signature);
        std::string r = "nabla = " + p.conway->str();
        if (lhs_holds == rhs_holds) out.push_back(pass("signature.hopf_char", chopf, l, r, lhs_holds ? "Hopf sum shape" : "neither side holds"));
        else out.push_back(failed("signature.hopf_char", chopf, l, r, "equivalence violated"));
    }

    const std::string clt = "Levine-Tristram signatures of weakly positive links are non-negative";
    if (p.levine_tristram.empty()) out.push_back(unknown("signature.levine_tristram", clt, "no Levine-Tristram values"));
    else {
        std::optional<TestRecord> bad;
        for (const auto& v : p.levine_tristram)
            if (v.value < 0 && !bad)
                bad = failed("signature.levine_tristram", clt, "sigma_omega(" + str(v.n) + "," + str(v.k) + ") = " + str(v.value), "0",
                             "negative Levine-Tristram signature");
        out.push_back(bad ? *bad : pass("signature.levine_tristram", clt, "", "", str(static_cast<int>(p.levine_tristram.size())) + " values non-negative"));
    }

    const std::string ctau0 = "weakly positive knots have tau >= 0";
    if (m != 1) out.push_back(pass("signature.tau_nonneg", ctau0, "", "", "applies to knots only"));
    else if (!p.known.tau) out.push_back(unknown("signature.tau_nonneg", ctau0, "tau not supplied"));
    else out.push_back(compare("signature.tau_nonneg", ctau0, "tau", *p.known.tau, Rel::Ge, "0", 0));

    const std::string ctau1 = "non-trivial w.s.a.p. knots have tau >= 1";
    if (m != 1) out.push_back(pass("signature.tau_positive", ctau1, "", "", "applies to knots only"));
    else if (!p.known.tau) out.push_back(unknown("signature.tau_positive", ctau1, "tau not supplied"));
    else {
        auto nt = nontrivial_knot(p);
        if (!nt) out.push_back(unknown("signature.tau_positive", ctau1, "non-triviality undecided"));
        else if (!*nt) out.push_back(pass("signature.tau_positive", ctau1, "", "", "trivial knot exempt"));
        else out.push_back(compare("signature.tau_positive", ctau1, "tau", *p.known.tau, Rel::Ge, "1", 1));
    }

    const std::string ccons = "signature and nabla(2i) consistency (parity and mod 4)";
    if (!p.signature || !p.conway) out.push_back(unknown("signature.nabla_consistency", ccons, "signature or Conway polynomial unavailable"));
    else {
        auto [re, im] = eval_at_2i(*p.conway);
        if (re == 0 && im == 0) out.push_back(unknown("signature.nabla_consistency", ccons, "nabla(2i) vanishes"));
        else if (nabla_sigma_consistency(*p.conway, *p.signature, m) == Consistency::Consistent)
            out.push_back(pass("signature.nabla_consistency", ccons, "sigma = " + str(*p.signature), "nabla(2i)", "consistent"));
        else
            out.push_back(unknown("signature.nabla_consistency", ccons, "inconsistent input data: sigma = " + str(*p.signature)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unknotting and Gordian distance

inline std::vector<TestRecord> unknotting_tests(const InvariantProfile& p) {
    using namespace detail;
    std::vector<TestRecord> out;
    const int m = p.components;
    const auto& k = p.known;
    bool knot = m == 1;
    bool have = p.conway.has_value();
    auto a = [&](int j) { return p.conway->coeff(j); };

    const std::string cu = "u(K) <= u_+(K) <= a_2(K) for w.s.a.p. knots";
    auto knot_bound = [&](const std::string& id, const std::optional<int>& v, const std::string& nm) {
        if (!knot) return pass(id, cu, "", "", "applies to knots only");
        if (!v) return unknown(id, cu, nm + " not supplied");
        if (!have) return unknown(id, cu, "Conway polynomial unavailable");
        return compare(id, cu, nm, *v, Rel::Le, "a_2", a(2));
    };
    out.push_back(knot_bound("unknotting.u_le_a2", k.unknotting, "u"));
    out.push_back(knot_bound("unknotting.uplus_le_a2", k.u_plus, "u_+"));
    if (!knot) out.push_back(pass("unknotting.u_le_uplus", cu, "", "", "applies to knots only"));
    else if (!k.unknotting || !k.u_plus) out.push_back(unknown("unknotting.u_le_uplus", cu, "u or u_+ not supplied"));
    else out.push_back(compare("unknotting.u_le_uplus", cu, "u", *k.unknotting, Rel::Le, "u_+", *k.u_plus));

    const std::string cl = "unlinking bounds from the Conway polynomial for non-split w.s.a.p. links";
    auto ns = nonsplit(p);
    auto link_bound = [&](const std::string& id, const std::optional<int>& v, const std::string& nm, auto rhs_fn,
                          const std::string& rname) {
        if (knot) return pass(id, cl, "", "", "applies to links only");
        if (!v) return unknown(id, cl, nm + " not supplied");
        if (!have) return unknown(id, cl, "Conway polynomial unavailable");
        if (ns != true) return unknown(id, cl, "splitness undecided or link split");
        return compare(id, cl, nm, *v, Rel::Le, rname, rhs_fn());
    };
    out.push_back(link_bound("unknotting.splitting", k.splitting_number, "sp", [&] { return Int(m - 2) + a(m - 1); },
                             "#L-2+a_{#L-1}"));
    out.push_back(link_bound("unknotting.u_comp", k.u_comp, "u^comp", [&] { return a(m + 1); }, "a_{#L+1}"));
    out.push_back(link_bound("unknotting.u_link", k.unknotting, "u", [&] { return Int(m - 2) + a(m - 1) + a(m + 1); },
                             "#L-2+a_{#L-1}+a_{#L+1}"));

    const std::string cd = "d_+(K,3_1) <= a_2(K) - 1 for non-trivial w.s.a.p. knots";
    if (!knot) out.push_back(pass("unknotting.d_plus_trefoil", cd, "", "", "applies to knots only"));
    else if (!k.d_plus_trefoil) out.push_back(unknown("unknotting.d_plus_trefoil", cd, "d_+(K,3_1) not supplied"));
    else if (!have) out.push_back(unknown("unknotting.d_plus_trefoil", cd, "Conway polynomial unavailable"));
    else {
        auto nt = nontrivial_knot(p);
        if (!nt) out.push_back(unknown("unknotting.d_plus_trefoil", cd, "non-triviality undecided"));
        else if (!*nt) out.push_back(pass("unknotting.d_plus_trefoil", cd, "", "", "trivial knot exempt"));
        else out.push_back(compare("unknotting.d_plus_trefoil", cd, "d_+(K,3_1)", *k.d_plus_trefoil, Rel::Le, "a_2-1", a(2) - 1));
    }

    const std::string cdet = "w.s.a.p. knots with sigma = 2 and u = a_2 have det <= 4 a_2 - 1";
    const std::string cgen = "w.s.a.p. knots with sigma = 2, u = a_2 and det = 4 a_2 - 1 have genus 1";
    bool base = knot && have && p.signature && p.det && k.unknotting;
    bool hyp = base && *p.signature == 2 && a(2) == *k.unknotting;
    if (!knot) {
        out.push_back(pass("unknotting.det_bound", cdet, "", "", "applies to knots only"));
        out.push_back(pass("unknotting.det_genus", cgen, "", "", "applies to knots only"));
    } else if (!base) {
        std::string why = !k.unknotting ? "u not supplied" : "invariants unavailable";
        out.push_back(unknown("unknotting.det_bound", cdet, why));
        out.push_back(unknown("unknotting.det_genus", cgen, why));
    } else if (!hyp) {
        out.push_back(pass("unknotting.det_bound", cdet, "sigma = " + str(*p.signature) + ", a_2 = " + str(a(2)),
                           "u = " + str(*k.unknotting), "hypothesis not met"));
        out.push_back(pass("unknotting.det_genus", cgen, "", "", "hypothesis not met"));
    } else {
        Int bound = 4 * a(2) - 1;
        out.push_back(compare("unknotting.det_bound", cdet, "det", *p.det, Rel::Le, "4a_2-1", bound));
        if (*p.det != bound) out.push_back(pass("unknotting.det_genus", cgen, "det = " + str(*p.det), "4a_2-1 = " + str(bound), "hypothesis not met"));
        else if (!k.genus) out.push_back(unknown("unknotting.det_genus", cgen, "genus not supplied"));
        else out.push_back(compare("unknotting.det_genus", cgen, "g", *k.genus, Rel::Eq, "1", 1));
    }
    return out;
}

// Lower bounds for a connected sum K_1 # ... # K_n from the gcd of the
// summands' determinants.
struct TorsionBound {
    Int delta;
    int unknotting_lower = 0;
    int trefoil_distance_lower = 0;
};

inline TorsionBound torsion_test(const std::vector<Int>& factor_dets) {
    TorsionBound t;
    t.delta = 0;
    for (const auto& d : factor_dets) t.delta = boost::multiprecision::gcd(t.delta, abs(d));
    int n = static_cast<int>(factor_dets.size());
    if (t.delta > 1) t.unknotting_lower = n;
    if (t.delta > 3) t.trefoil_distance_lower = n;
    return t;
}

// ---------------------------------------------------------------------------
// Bennequin-sharp links

inline bool flagged_sharp(const InvariantProfile& p) {
    if (p.known.bennequin_sharp) return *p.known.bennequin_sharp;
    return p.tag && (*p.tag == PositivityTag::Positive || *p.tag == PositivityTag::AlmostPositiveI ||
                     *p.tag == PositivityTag::AlmostPositiveII);
}

namespace detail {

inline std::vector<TestRecord> sharp_records(const InvariantProfile& p, const std::string& basis) {
    std::vector<TestRecord> out;
    const int m = p.components;
    const std::string cite = "Bennequin-sharp w.s.a.p. links (" + basis + ")";
    auto ns = nonsplit(p);

    const std::string ci = cite + ", (i) a_{#L-1+2i} >= C(g,i)";
    if (!p.conway || ns != true) out.push_back(unknown("bsharp.i.binomial_genus", ci, "Conway polynomial unavailable or link not known non-split"));
    else if (!p.known.genus) out.push_back(unknown("bsharp.i.binomial_genus", ci, "genus not supplied"));
    else out.push_back(binomial_test("bsharp.i.binomial_genus", ci, p, *p.known.genus, "g = " + str(*p.known.genus)));

    const std::string cii = cite + ", (ii) min deg_v P = 2 min deg V = max deg_z P";
    const std::string ciic = cite + ", (ii) max deg_z P = 1 - chi(L)";
    const std::string ciii = cite + ", (iii) c_{j,j} = 0 off the top and c_{N,N} = 1";
    const std::string civ = cite + ", (iv) c_{N,N-2} <= N for non-split links";
    const std::string civf = cite + ", (iv) c_{N,N-2} = N for fibered non-split links";
    const std::string cv = cite + ", (v) lowest Jones terms";
    const std::string cgap = "gap-free top z-degree row (informational)";
    if (!p.homfly || !p.jones) {
        for (auto [id, c] : {std::pair{"bsharp.ii", cii}, {"bsharp.ii_chi", ciic}, {"bsharp.iii", ciii}, {"bsharp.iv", civ},
                             {"bsharp.iv_fibered", civf}, {"bsharp.v", cv}, {"bsharp.gap_free", cgap}})
            out.push_back(unknown(id, c, "HOMFLY or Jones polynomial unavailable"));
        return out;
    }
    const Poly2& P = *p.homfly;
    const Poly1& V = *p.jones;
    const int N = P.max_y();
    {
        int a = P.min_x(), b = V.min_deg_half();
        std::string l = "min deg_v P = " + str(a) + ", 2 min deg V = " + str(b);
        std::string r = "max deg_z P = " + str(N);
        if (a == b && b == N) out.push_back(pass("bsharp.ii", cii, l, r, "equalities hold"));
        else out.push_back(failed("bsharp.ii", cii, l, r, "min deg_v P = 2 min deg V = max deg_z P violated"));
    }
    auto chi = link_chi(p);
    if (!chi) out.push_back(unknown("bsharp.ii_chi", ciic, "chi(L) unknown"));
    else {
        TestRecord r = compare("bsharp.ii_chi", ciic, "max deg_z P", N, Rel::Eq, "1-chi(L)", 1 - chi->value);
        r.reason += " (chi(L) from " + chi->source + ")";
        out.push_back(r);
    }
    {
        std::optional<TestRecord> bad;
        for (const auto& [key, c] : P.terms())
            if (key.first == key.second && key.first != N && !bad)
                bad = failed("bsharp.iii", ciii, hc(key.first, key.first) + " = " + str(c), "0", "nonzero diagonal coefficient off N = " + str(N));
        if (!bad && P.coeff(N, N) != 1)
            bad = failed("bsharp.iii", ciii, hc(N, N) + " = " + str(P.coeff(N, N)), "1", "top diagonal coefficient differs from 1");
        out.push_back(bad ? *bad : pass("bsharp.iii", ciii, hc(N, N) + " = 1", "", "diagonal concentrated at N = " + str(N)));
    }
    Int cnn2 = P.coeff(N, N - 2);
    if (ns != true) {
        out.push_back(unknown("bsharp.iv", civ, "splitness undecided or link split"));
        out.push_back(unknown("bsharp.iv_fibered", civf, "splitness undecided or link split"));
        out.push_back(unknown("bsharp.v", cv, "splitness undecided or link split"));
    } else {
        out.push_back(compare("bsharp.iv", civ, hc(N, N - 2), cnn2, Rel::Le, "N", N));
        if (!p.known.fibered) out.push_back(unknown("bsharp.iv_fibered", civf, "fiberedness not supplied"));
        else if (!*p.known.fibered) out.push_back(pass("bsharp.iv_fibered", civf, "", "", "hypothesis not met: not fibered"));
        else out.push_back(compare("bsharp.iv_fibered", civf, hc(N, N - 2), cnn2, Rel::Eq, "N", N));

        Int sgn = (m - 1) % 2 == 0 ? 1 : -1;
        Int want_lo = sgn, want_next = sgn * (cnn2 - N);
        Int got_lo = V.coeff_half(N), got_next = V.coeff_half(N + 2);
        bool lowest_ok = V.min_deg_half() >= N;
        std::string l = "t^{" + half_str(N) + "}: " + str(got_lo) + ", t^{" + half_str(N + 2) + "}: " + str(got_next);
        std::string r = "t^{" + half_str(N) + "}: " + str(want_lo) + ", t^{" + half_str(N + 2) + "}: " + str(want_next);
        if (lowest_ok && got_lo == want_lo && got_next == want_next) out.push_back(pass("bsharp.v", cv, l, r, "leading Jones terms match"));
        else out.push_back(failed("bsharp.v", cv, l, r, "V = (-1)^{#L-1}(t^{N/2} + (c_{N,N-2} - N) t^{(N+2)/2} + ...) violated"));
    }
    {
        Poly1 row = P.y_row(N);
        bool gap = false;
        if (!row.is_zero())
            for (int e2 = row.min_deg_half(); e2 <= row.max_deg_half(); e2 += 4)
                if (row.coeff_half(e2) == 0) gap = true;
        out.push_back(unknown("bsharp.gap_free", cgap, std::string("informational: top row ") + row.str() + (gap ? " has a gap" : " is gap-free")));
    }
    return out;
}

}  // namespace detail

inline std::vector<TestRecord> bennequin_sharp_tests(const InvariantProfile& p) {
    if (!flagged_sharp(p)) fail(Errc::NotFlaggedSharp, "profile '" + p.name + "' is not flagged Bennequin-sharp");
    std::string basis = p.known.bennequin_sharp ? "supplied flag" : "positive or almost positive diagram";
    return detail::sharp_records(p, basis);
}

// ---------------------------------------------------------------------------
// Positive and almost positive targets

namespace detail {

inline std::vector<TestRecord> almost_positive_records(const InvariantProfile& p, Target target) {
    std::vector<TestRecord> out;
    const std::string cap = "almost positive links: min deg_v P = max deg_z P";
    if (!p.homfly) out.push_back(unknown("homfly.ap", cap, "HOMFLY polynomial unavailable"));
    else out.push_back(compare("homfly.ap", cap, "min deg_v P", p.homfly->min_x(), Rel::Eq, "max deg_z P", p.homfly->max_y()));

    const std::string cy = target == Target::Positive ? "positive links: P(z;N) = D(z;N), non-negative"
                                                      : "P(z;N) = D(z;N) for almost positive links (informational)";
    if (!p.homfly || !p.dubrovnik) {
        out.push_back(unknown("yokota", cy, "HOMFLY or Dubrovnik polynomial unavailable"));
    } else {
        int N = p.homfly->max_y();
        Poly1 pr = p.homfly->x_row(N), dr = p.dubrovnik->x_row(N);
        bool nonneg = std::all_of(pr.terms().begin(), pr.terms().end(), [](const auto& kv) { return kv.second >= 0; });
        bool ok = pr == dr && nonneg && !pr.is_zero();
        std::string l = "P(z;" + str(N) + ") = " + pr.str(), r = "D(z;" + str(N) + ") = " + dr.str();
        if (target == Target::Positive)
            out.push_back(ok ? pass("yokota", cy, l, r, "rows agree and are non-negative")
                             : failed("yokota", cy, l, r, "rows differ, vanish or have a negative coefficient"));
        else
            out.push_back(unknown("yokota", cy, std::string("informational: rows ") + (ok ? "agree" : "differ") + "; " + l + "; " + r));
    }

    if (target == Target::AlmostPositive) {
        const std::string ct = "knots with a type II almost positive diagram: min deg_a D = max deg_z P = 1 - chi(K)";
        const std::string cty = "knots with a type II almost positive diagram: P(z;N) = D(z;N), nonzero and non-negative";
        bool type2 = p.tag == PositivityTag::AlmostPositiveII && p.components == 1;
        if (!type2) {
            out.push_back(pass("type_ii.degree", ct, "", "", "no type II almost positive diagram in the profile"));
            out.push_back(pass("type_ii.yokota", cty, "", "", "no type II almost positive diagram in the profile"));
        } else if (!p.homfly || !p.dubrovnik || !p.diagram_chi) {
            out.push_back(unknown("type_ii.degree", ct, "HOMFLY or Dubrovnik polynomial unavailable"));
            out.push_back(unknown("type_ii.yokota", cty, "HOMFLY or Dubrovnik polynomial unavailable"));
        } else {
            int N = -1 - *p.diagram_chi;
            int a = p.dubrovnik->min_x(), b = p.homfly->max_y();
            std::string l = "min deg_a D = " + str(a) + ", max deg_z P = " + str(b);
            std::string r = "1-chi(K) = " + str(N);
            out.push_back(a == N && b == N ? pass("type_ii.degree", ct, l, r, "equalities hold")
                                           : failed("type_ii.degree", ct, l, r, "equalities violated"));
            Poly1 pr = p.homfly->x_row(N), dr = p.dubrovnik->x_row(N);
            bool nonneg = std::all_of(pr.terms().begin(), pr.terms().end(), [](const auto& kv) { return kv.second >= 0; });
            std::string l2 = "P(z;" + str(N) + ") = " + pr.str(), r2 = "D(z;" + str(N) + ") = " + dr.str();
            out.push_back(pr == dr && nonneg && !pr.is_zero() ? pass("type_ii.yokota", cty, l2, r2, "rows agree and are non-negative")
                                                               : failed("type_ii.yokota", cty, l2, r2, "rows differ, vanish or have a negative coefficient"));
        }
    }
    return out;
}

}  // namespace detail

inline ObstructionReport run_battery(const InvariantProfile& p, Target target = Target::Wsap) {
    ObstructionReport rep;
    rep.name = p.name;
    rep.target = target;
    rep.known = p.known;
    auto add = [&](std::vector<TestRecord> v) { rep.records.insert(rep.records.end(), v.begin(), v.end()); };
    add(conway_tests(p));
    add(homfly_tests(p));
    add(jones_tests(p));
    add(signature_tests(p));
    add(unknotting_tests(p));
    if (target == Target::Positive || target == Target::AlmostPositive) {
        add(detail::sharp_records(p, target == Target::Positive ? "positive links are Bennequin-sharp"
                                                                : "almost positive links are Bennequin-sharp"));
        add(detail::almost_positive_records(p, target));
    } else if (flagged_sharp(p)) {
        add(bennequin_sharp_tests(p));
    } else {
        for (const char* id : {"bsharp.i.binomial_genus", "bsharp.ii", "bsharp.ii_chi", "bsharp.iii", "bsharp.iv",
                               "bsharp.iv_fibered", "bsharp.v", "bsharp.gap_free"})
            rep.records.push_back(detail::unknown(id, "Bennequin-sharp w.s.a.p. links", "not flagged Bennequin-sharp"));
    }
    rep.verdict = rep.count(Outcome::Fail) > 0 ? Verdict::NotWSAP : Verdict::ConsistentWithWSAP;
    return rep;
}

// ---------------------------------------------------------------------------
// CSV form: one row per test record.

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace detail

inline std::string csv_header() { return "name,test_id,citation,outcome,lhs,rhs,reason\n"; }

inline std::string to_csv_rows(const ObstructionReport& r) {
    using detail::csv_field;
    std::string out;
    for (const auto& t : r.records)
        out += csv_field(r.name) + "," + csv_field(t.id) + "," + csv_field(t.citation) + "," + outcome_name(t.outcome) + "," +
               csv_field(t.lhs) + "," + csv_field(t.rhs) + "," + csv_field(t.reason) + "\n";
    return out;
}

inline std::string to_csv(const std::vector<ObstructionReport>& reports) {
    std::string out = csv_header();
    for (const auto& r : reports) out += to_csv_rows(r);
    return out;
}

}  // namespace knotpos
