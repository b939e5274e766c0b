#pragma once

// Positivity classes of diagrams, negative overarcs, weak positivity,
// height-splitness, linking graphs and the standard skein triple.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "linalg.hpp"
#include "polynomials.hpp"
#include "seifert.hpp"

namespace knotpos {

// A maximal stretch of one component that passes over every crossing it
// meets.  It begins on `first_arc`, which leaves an underpass (or anywhere
// on a component with no underpass), and runs over `over` in order.
struct Overarc {
    int component = -1;
    int first_arc = -1;
    int num_arcs = 0;
    std::vector<int> over;     // crossings passed over, in walk order
    int end_crossing = -1;     // underpass terminating the overarc, -1 if closed
    int start_crossing = -1;   // underpass just before the overarc, -1 if closed
    bool closed = false;       // the whole component lies over

    int length() const { return static_cast<int>(over.size()); }
    int last_arc(const Diagram& d) const {
        int a = first_arc;
        for (int i = 1; i < num_arcs; ++i) a = d.next_arc(a);
        return a;
    }
};

inline std::vector<Overarc> overarcs(const Diagram& d) {
    std::vector<Overarc> out;
    for (int k = 0; k < d.num_arc_components(); ++k) {
        int b = d.comp_begin(k), e = d.comp_end(k);
        int first_under = -1;
        for (int a = b; a < e; ++a)
            if (!d.head_over(a)) {
                first_under = a;
                break;
            }
        if (first_under < 0) {
            Overarc ov;
            ov.component = k;
            ov.first_arc = b;
            ov.num_arcs = e - b;
            ov.closed = true;
            for (int a = b; a < e; ++a) ov.over.push_back(d.head(a));
            out.push_back(std::move(ov));
            continue;
        }
        // Walk once around, starting right after the first underpass.
        int a = d.next_arc(first_under);
        int steps = e - b;
        Overarc ov;
        for (int i = 0; i < steps; ++i) {
            if (ov.first_arc < 0) {
                ov.component = k;
                ov.first_arc = a;
                ov.start_crossing = d.tail(a);
            }
            ++ov.num_arcs;
            if (d.head_over(a)) {
                ov.over.push_back(d.head(a));
            } else {
                ov.end_crossing = d.head(a);
                out.push_back(std::move(ov));
                ov = Overarc{};
            }
            a = d.next_arc(a);
        }
    }
    std::sort(out.begin(), out.end(), [](const Overarc& x, const Overarc& y) {
        return std::pair(x.component, x.first_arc) < std::pair(y.component, y.first_arc);
    });
    return out;
}

// The overarc carrying every negative crossing as an overpass, if any.
// Among candidates (all overarcs for a positive diagram) the longest wins,
// ties going to the earliest component and start arc.
inline std::optional<Overarc> negative_overarc(const Diagram& d) {
    int cm = d.c_minus();
    std::optional<Overarc> best;
    for (auto& ov : overarcs(d)) {
        int neg = 0;
        for (int x : ov.over)
            if (d.crossing(x).sign < 0) ++neg;
        if (neg != cm) continue;
        if (!best || ov.length() > best->length()) best = std::move(ov);
    }
    return best;
}

struct Complexity {
    int crossings = 0;
    int rest = 0;  // crossings off the negative overarc
    friend auto operator<=>(const Complexity&, const Complexity&) = default;
};

inline Complexity complexity(const Diagram& d, const Overarc& ov) {
    return {d.num_crossings(), d.num_crossings() - ov.length()};
}

// Complexity of a weakly successively almost positive diagram; a diagram
// without crossings has complexity (0, 0).
inline std::optional<Complexity> complexity(const Diagram& d) {
    if (d.num_crossings() == 0) return Complexity{0, 0};
    auto ov = negative_overarc(d);
    if (!ov) return std::nullopt;
    return complexity(d, *ov);
}

// ---------------------------------------------------------------------------
// Weak positivity

struct WeakPositivityWitness {
    std::vector<int> order;       // components in walk order
    std::vector<int> basepoints;  // first arc walked on each listed component
};

constexpr int kMaxWeakPositivityComponents = 8;
constexpr int kMaxHeightSplitComponents = 16;

// Searches component orders and basepoints under which every negative
// crossing is met first at its overpass.  Inter-component crossings only
// constrain the order and self-crossings only constrain the basepoint, so
// the search factors: a topological order (smallest available component
// first) and, per component, the first admissible basepoint.
inline std::optional<WeakPositivityWitness> is_weakly_positive(const Diagram& d) {
    if (d.num_components() > kMaxWeakPositivityComponents)
        fail(Errc::TooManyComponents, std::to_string(d.num_components()) + " components exceed the search limit");
    int m = d.num_arc_components();
    std::vector<std::vector<int>> before(m);  // before[j]: components that must precede j
    for (int x = 0; x < d.num_crossings(); ++x) {
        if (d.crossing(x).sign > 0) continue;
        int o = d.over_comp(x), u = d.under_comp(x);
        if (o != u) before[u].push_back(o);
    }
    WeakPositivityWitness w;
    std::vector<char> placed(m, 0);
    for (int step = 0; step < m; ++step) {
        int pick = -1;
        for (int k = 0; k < m && pick < 0; ++k) {
            if (placed[k]) continue;
            bool ready = std::all_of(before[k].begin(), before[k].end(), [&](int o) { return placed[o]; });
            if (ready) pick = k;
        }
        if (pick < 0) return std::nullopt;
        placed[pick] = 1;
        w.order.push_back(pick);
    }
    for (int k : w.order) {
        int b = d.comp_begin(k), e = d.comp_end(k);
        int chosen = -1;
        for (int s = b; s < e && chosen < 0; ++s) {
            // Walk from arc s; a negative self-crossing must be seen over first.
            std::vector<char> seen(d.num_crossings(), 0);
            bool ok = true;
            int a = s;
            for (int i = 0; i < e - b && ok; ++i) {
                int x = d.head(a);
                if (d.crossing(x).sign < 0 && d.over_comp(x) == k && d.under_comp(x) == k && !seen[x] &&
                    !d.head_over(a))
                    ok = false;
                seen[x] = 1;
                a = d.next_arc(a);
            }
            if (ok) chosen = s;
        }
        if (chosen < 0) return std::nullopt;
        w.basepoints.push_back(chosen);
    }
    return w;
}

// Checks that under the witness every negative crossing has o(c) < u(c).
inline bool verify_weak_positivity(const Diagram& d, const WeakPositivityWitness& w) {
    GaussDiagram g = to_gauss_diagram(d, w.order, w.basepoints);
    for (const auto& ar : g.arrows)
        if (ar.crossing >= 0 && ar.sign < 0 && ar.tail > ar.head) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Height-splitness

struct Bipartition {
    std::vector<int> upper;  // components lying above
    std::vector<int> lower;
};

// Components are numbered as in the diagram, crossingless circles last.
inline std::optional<Bipartition> height_split(const Diagram& d) {
    int n = d.num_components();
    if (n > kMaxHeightSplitComponents)
        fail(Errc::TooManyComponents, std::to_string(n) + " components exceed the search limit");
    if (n < 2) return std::nullopt;
    std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        bool ok = true;
        for (int x = 0; x < d.num_crossings() && ok; ++x) {
            bool o = mask >> d.over_comp(x) & 1u, u = mask >> d.under_comp(x) & 1u;
            if (u && !o) ok = false;
        }
        if (!ok) continue;
        Bipartition bp;
        for (int k = 0; k < n; ++k) (mask >> k & 1u ? bp.upper : bp.lower).push_back(k);
        return bp;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Linking graph

struct LinkingGraph {
    int vertices = 0;
    std::vector<std::vector<int>> lk;                // symmetric, zero diagonal
    std::vector<std::pair<int, int>> weighted_edges;  // pairs with lk != 0
    bool nonnegative = true;
    std::optional<Int> spanning_trees;               // of the multigraph, when nonnegative

    bool connected() const {
        UnionFind uf(vertices);
        for (auto [i, j] : weighted_edges) uf.unite(i, j);
        for (int i = 1; i < vertices; ++i)
            if (uf.find(i) != uf.find(0)) return false;
        return true;
    }
};

inline LinkingGraph linking_graph(const Diagram& d) {
    LinkingGraph g;
    g.vertices = d.num_components();
    g.lk.assign(g.vertices, std::vector<int>(g.vertices, 0));
    for (int x = 0; x < d.num_crossings(); ++x) {
        int o = d.over_comp(x), u = d.under_comp(x);
        if (o == u) continue;
        // Each crossing contributes half its sign; count both and halve.
        g.lk[o][u] += d.crossing(x).sign;
        g.lk[u][o] += d.crossing(x).sign;
    }
    std::vector<std::pair<int, int>> multi;
    for (int i = 0; i < g.vertices; ++i)
        for (int j = i + 1; j < g.vertices; ++j) {
            g.lk[i][j] /= 2;
            g.lk[j][i] /= 2;
            int v = g.lk[i][j];
            if (v != 0) g.weighted_edges.emplace_back(i, j);
            if (v < 0) g.nonnegative = false;
            for (int t = 0; t < v; ++t) multi.emplace_back(i, j);
        }
    if (g.nonnegative) g.spanning_trees = spanning_tree_count(g.vertices, multi);
    return g;
}

// Splitness of a weakly positive diagram: the link splits exactly when the
// linking graph is disconnected.
inline bool is_split_weakly_positive(const Diagram& d) {
    if (!is_weakly_positive(d)) fail(Errc::NotWeaklyPositive, "diagram has no weakly positive witness");
    LinkingGraph g = linking_graph(d);
    return !g.connected();
}

// ---------------------------------------------------------------------------
// Classification

enum class PositivityTag { Positive, AlmostPositiveI, AlmostPositiveII, GoodSAP, SAP, WSAP, WeaklyPositiveOnly, None };

inline const char* tag_name(PositivityTag t) {
    switch (t) {
        case PositivityTag::Positive: return "Positive";
        case PositivityTag::AlmostPositiveI: return "AlmostPositiveI";
        case PositivityTag::AlmostPositiveII: return "AlmostPositiveII";
        case PositivityTag::GoodSAP: return "GoodSAP";
        case PositivityTag::SAP: return "SAP";
        case PositivityTag::WSAP: return "WSAP";
        case PositivityTag::WeaklyPositiveOnly: return "WeaklyPositiveOnly";
        case PositivityTag::None: return "None";
    }
    return "None";
}

struct PositivityClass {
    PositivityTag tag = PositivityTag::None;
    int k = 0;                                    // negative crossings
    std::optional<Overarc> overarc;               // negative overarc witness
    std::optional<WeakPositivityWitness> weak;    // order and basepoints
    int ell() const { return overarc ? overarc->length() : 0; }

    bool is_wsap() const { return tag <= PositivityTag::WSAP; }
    bool is_sap() const { return tag <= PositivityTag::SAP; }
    std::string str() const;
};

inline std::string PositivityClass::str() const {
    std::string s = tag_name(tag);
    if (tag == PositivityTag::GoodSAP || tag == PositivityTag::SAP || tag == PositivityTag::WSAP)
        s += "(" + std::to_string(k) + ")";
    return s;
}

namespace detail {

inline bool negatives_consecutive(const Diagram& d, const Overarc& ov) {
    int first = -1, last = -1, count = 0;
    for (int i = 0; i < ov.length(); ++i) {
        if (d.crossing(ov.over[i]).sign > 0) continue;
        if (first < 0) first = i;
        last = i;
        ++count;
    }
    return count == 0 || last - first + 1 == count;
}

}  // namespace detail

inline PositivityClass classify(const Diagram& d) {
    PositivityClass pc;
    pc.k = d.c_minus();
    pc.overarc = negative_overarc(d);
    if (pc.k == 0) {
        pc.tag = PositivityTag::Positive;
    } else if (pc.overarc) {
        CrossingClasses cc = classify_crossings(seifert_data(d));
        bool all_good = true;
        for (int x = 0; x < d.num_crossings(); ++x)
            if (d.crossing(x).sign < 0 && !cc.good[x]) all_good = false;
        if (pc.k == 1) {
            pc.tag = all_good ? PositivityTag::AlmostPositiveI : PositivityTag::AlmostPositiveII;
        } else if (!detail::negatives_consecutive(d, *pc.overarc)) {
            pc.tag = PositivityTag::WSAP;
        } else {
            pc.tag = all_good ? PositivityTag::GoodSAP : PositivityTag::SAP;
        }
    }
    if (d.num_components() <= kMaxWeakPositivityComponents) pc.weak = is_weakly_positive(d);
    if (!pc.overarc && pc.k > 0) pc.tag = pc.weak ? PositivityTag::WeaklyPositiveOnly : PositivityTag::None;
    return pc;
}

// ---------------------------------------------------------------------------
// Standard skein triple

struct SkeinTriple {
    int crossing = -1;        // crossing of `plus`
    Diagram plus;             // based at the start of the negative overarc
    Diagram zero;
    Diagram minus;
    Complexity c_plus, c_zero, c_minus;
};

// At the positive crossing terminating the negative overarc; with
// `at_start`, at the underpass where the overarc begins, the basepoint
// moving back onto the arc that reaches it.
inline SkeinTriple standard_skein_triple(const Diagram& d, const Overarc& ov, bool at_start = false) {
    if (ov.closed) fail(Errc::NoPositiveCrossing, "no underpass bounds the negative overarc");
    int c = at_start ? ov.start_crossing : ov.end_crossing;
    if (std::find(ov.over.begin(), ov.over.end(), c) != ov.over.end())
        fail(Errc::NoPositiveCrossing, "the overarc passes under a crossing it also passes over");
    int base = at_start ? d.prev_arc(ov.first_arc) : ov.first_arc;
    SkeinTriple t;
    t.crossing = c;
    t.plus = rebase(d, {ov.component}, {base});
    t.zero = smooth(t.plus, c);
    t.minus = crossing_change(t.plus, c);
    t.c_plus = complexity(d, ov);
    auto cz = complexity(t.zero), cm = complexity(t.minus);
    if (!cz || !cm) fail(Errc::Internal, "skein resolution left the weakly successively almost positive class");
    t.c_zero = *cz;
    t.c_minus = *cm;
    return t;
}

inline SkeinTriple standard_skein_triple(const Diagram& d, bool at_start = false) {
    if (d.num_crossings() == 0) fail(Errc::NoPositiveCrossing, "diagram has no crossings");
    auto ov = negative_overarc(d);
    if (!ov) fail(Errc::NotWSAP, "negative crossings do not lie on a single overarc");
    return standard_skein_triple(d, *ov, at_start);
}

// When the negative overarc passes over a crossing and later ends under it,
// the stretch between is a loop lying above everything it meets.  Pulling
// the loop up and shrinking it removes the crossing and every crossing on
// the loop.  Returns nullopt when there is no such loop.
inline std::optional<Diagram> remove_over_loop(const Diagram& d) {
    auto ov = d.num_crossings() == 0 ? std::nullopt : negative_overarc(d);
    if (!ov || ov->closed) return std::nullopt;
    int c = ov->end_crossing;
    auto at = std::find(ov->over.begin(), ov->over.end(), c);
    if (at == ov->over.end()) return std::nullopt;
    std::set<int> gone(at, ov->over.end());
    const Crossing& x = d.crossing(c);
    UnionFind uf(d.num_arcs());
    // Loop arcs run from x.oo to x.ui; the strand entering at x.oi leaves on x.uo.
    for (int a = x.oo;; a = d.next_arc(a)) {
        uf.unite(a, x.oi);
        if (a == x.ui) break;
    }
    uf.unite(x.oi, x.uo);
    for (int y : gone) {
        if (y == c) continue;
        const Crossing& z = d.crossing(y);
        uf.unite(z.ui, z.uo);
    }
    std::vector<RawCrossing> raw;
    std::set<int> present;
    for (int i = 0; i < d.num_crossings(); ++i) {
        if (gone.count(i)) continue;
        Crossing y = d.crossing(i);
        y.ui = uf.find(y.ui);
        y.uo = uf.find(y.uo);
        y.oi = uf.find(y.oi);
        y.oo = uf.find(y.oo);
        for (int l : {y.ui, y.uo, y.oi, y.oo}) present.insert(l);
        raw.push_back(y);
    }
    std::set<int> classes;
    classes.insert(uf.find(x.oi));
    for (int y : gone) classes.insert(uf.find(d.crossing(y).ui));
    int circles = d.circles();
    for (int l : classes)
        if (!present.count(l)) ++circles;
    std::vector<int> hints;
    for (int k = 0; k < d.num_arc_components(); ++k) hints.push_back(uf.find(d.comp_begin(k)));
    return build_diagram(raw, circles, hints, false);
}

struct UnknottingStep {
    Diagram diagram;
    int crossing;
    Complexity complexity;
    SkeinTriple triple;
};

struct UnknottingSequence {
    std::vector<UnknottingStep> steps;
    Diagram terminal;
    Poly1 terminal_conway;
    bool reached_hopf_sum = false;  // terminal conway is z^{#L-1}
};

// Switches crossings of standard skein triples until the Conway polynomial
// is z^{#L-1}.  Before each step, loops lying over the rest of the diagram
// are removed and the diagram is simplified while it stays w.s.a.p.
// The triple may sit at either end of the negative overarc (any overarc of
// a positive diagram); choices whose D- keeps a nonzero Conway polynomial
// are tried first, and the search backtracks out of split dead ends.  If
// no choice sequence reaches z^{#L-1} within the search limit, the first
// dead end found is returned.
inline UnknottingSequence standard_unknotting_sequence(const Diagram& d, std::uint64_t budget = kDefaultBudget) {
    if (d.num_crossings() > 0 && !negative_overarc(d))
        fail(Errc::NotWSAP, "negative crossings do not lie on a single overarc");
    const Poly1 target = Poly1::monomial(1, d.num_components() - 1);
    const bool prune_split = !conway(d, budget).is_zero();
    constexpr int kSearchLimit = 400;
    int explored = 0;
    std::vector<UnknottingStep> path;
    std::optional<UnknottingSequence> first_dead_end;

    auto triples = [&](const Diagram& cur) {
        std::vector<Overarc> candidates;
        if (cur.c_minus() == 0) {
            candidates = overarcs(cur);
            std::stable_sort(candidates.begin(), candidates.end(),
                             [](const Overarc& a, const Overarc& b) { return a.length() > b.length(); });
        } else {
            candidates.push_back(*negative_overarc(cur));
        }
        std::vector<SkeinTriple> live, split;
        std::set<std::string> seen;
        for (const auto& ov : candidates)
            for (bool at_start : {false, true}) {
                try {
                    SkeinTriple t = standard_skein_triple(cur, ov, at_start);
                    if (!seen.insert(canonical_key(t.minus)).second) continue;
                    (conway(t.minus, budget).is_zero() ? split : live).push_back(std::move(t));
                } catch (const Error& e) {
                    if (e.code() != Errc::NoPositiveCrossing) throw;
                }
            }
        live.insert(live.end(), std::make_move_iterator(split.begin()), std::make_move_iterator(split.end()));
        return live;
    };

    std::function<std::optional<UnknottingSequence>(Diagram)> search = [&](Diagram cur) -> std::optional<UnknottingSequence> {
        ++explored;
        while (true) {
            if (auto r = remove_over_loop(cur)) {
                cur = std::move(*r);
                continue;
            }
            Diagram s = simplify(cur);
            if (s.num_crossings() >= cur.num_crossings() || !classify(s).is_wsap()) break;
            cur = std::move(s);
        }
        Poly1 n = conway(cur, budget);
        auto finish = [&](bool reached) {
            UnknottingSequence seq;
            seq.steps = path;
            seq.terminal = cur;
            seq.terminal_conway = n;
            seq.reached_hopf_sum = reached;
            return seq;
        };
        if (n == target) return finish(true);
        bool dead = cur.num_crossings() == 0 || (prune_split && n.is_zero());
        if (!dead) {
            auto ts = triples(cur);
            dead = ts.empty();
            for (auto& t : ts) {
                if (explored >= kSearchLimit && first_dead_end) break;
                path.push_back({t.plus, t.crossing, t.c_plus, t});
                auto found = search(t.minus);
                path.pop_back();
                if (found) return found;
            }
        }
        if (dead && !first_dead_end) first_dead_end = finish(false);
        return std::nullopt;
    };

    if (auto found = search(d)) return *found;
    return *first_dead_end;
}

}  // namespace knotpos
