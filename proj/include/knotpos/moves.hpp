#pragma once

// Diagram constructions that need planar or Seifert data: the t-bar twist,
// the diagram Murasugi sum, and randomized Reidemeister moves.

#include <random>
#include <string>

#include "diagram.hpp"
#include "seifert.hpp"

namespace knotpos {

namespace detail {

inline int fresh_label(const std::vector<RawCrossing>& raw) {
    int m = -1;
    for (const auto& x : raw) m = std::max({m, x.ui, x.uo, x.oi, x.oo});
    return m + 1;
}

// Replaces the incoming occurrence of `from` at crossing x.
inline void retarget_in(RawCrossing& x, int from, int to) {
    if (x.ui == from) {
        x.ui = to;
    } else if (x.oi == from) {
        x.oi = to;
    } else {
        fail(Errc::Internal, "arc does not enter crossing");
    }
}

}  // namespace detail

// Replaces positive crossing c by three positive crossings forming a full
// twist of two antiparallel strands.  Adds two crossings and two Seifert
// circles, so the canonical Euler characteristic is unchanged.
inline Diagram bt_twist(const Diagram& d, int c) {
    check_crossing(d, c);
    if (d.crossing(c).sign < 0) fail(Errc::NegativeCrossing, "t-bar twist needs a positive crossing");
    auto raw = raw_crossings(d);
    const Crossing x = raw[c];
    int a1 = detail::fresh_label(raw), a2 = a1 + 1, b1 = a1 + 2, b2 = a1 + 3;
    raw[c] = Crossing{b2, x.uo, x.oi, a1, 1};
    raw.push_back(Crossing{a1, a2, b1, b2, 1});
    raw.push_back(Crossing{x.ui, b1, a2, x.oo, 1});
    return build_diagram(raw, d.circles(), d.comp_starts(), true);
}

// ---------------------------------------------------------------------------
// Murasugi sum

// A cyclic interleaving of the crossings on the two identified circles:
// `pattern` lists '1' for the next crossing of the first circle and '2'
// for the next crossing of the second, and the second circle's crossings
// are taken starting at index `offset` along that circle.
struct Alignment {
    std::string pattern;
    int offset = 0;
};

namespace detail {

// Whether the left side of circle k is a region bounded by k alone.
inline std::pair<bool, bool> empty_sides(const SeifertData& sd, const Diagram& d, int k) {
    int a = sd.circles[k][0];
    int l = sd.region_of_face[d.faces().left(a)], r = sd.region_of_face[d.faces().right(a)];
    auto alone = [&](int reg) {
        for (int j = 0; j < sd.num_circles(); ++j) {
            if (j == k || sd.circles[j].empty()) continue;
            int b = sd.circles[j][0];
            if (sd.region_of_face[d.faces().left(b)] == reg || sd.region_of_face[d.faces().right(b)] == reg)
                return false;
        }
        return true;
    };
    return {alone(l), alone(r)};
}

}  // namespace detail

// Glues d2 into d1 by identifying Seifert circle s1 of d1, which must have
// an empty side, with Seifert circle s2 of d2, which must have all other
// circles on one side.  The crossings of d2 end up on the empty side of s1.
inline Diagram murasugi_sum(const Diagram& d1, int s1, const Diagram& d2, int s2, const Alignment& al) {
    SeifertData sd1 = seifert_data(d1), sd2 = seifert_data(d2);
    if (!d1.is_connected() || !d2.is_connected()) fail(Errc::DisconnectedDiagram, "Murasugi sum needs connected diagrams");
    if (s1 < 0 || s1 >= sd1.num_circles() || sd1.circles[s1].empty())
        fail(Errc::NotInnermost, "first circle does not exist or carries no crossing");
    if (s2 < 0 || s2 >= sd2.num_circles() || sd2.circles[s2].empty())
        fail(Errc::NotOutermost, "second circle does not exist or carries no crossing");
    auto [l1, r1] = detail::empty_sides(sd1, d1, s1);
    auto [l2, r2] = detail::empty_sides(sd2, d2, s2);
    if (!l1 && !r1) fail(Errc::NotInnermost, "circle " + std::to_string(s1) + " has circles on both sides");
    if (!l2 && !r2) fail(Errc::NotOutermost, "circle " + std::to_string(s2) + " has circles on both sides");
    // The crossings of d1 lie on the non-empty side of s1; those of d2 must
    // come in on the other side.
    bool stuff1_left = !l1, stuff2_left = !l2;
    if (stuff1_left == stuff2_left)
        fail(Errc::InvalidAlignment, "circle orientations are incompatible; reverse one diagram");

    const auto& c1 = sd1.circles[s1];
    const auto& c2 = sd2.circles[s2];
    int k = static_cast<int>(c1.size()), l = static_cast<int>(c2.size());
    if (static_cast<int>(al.pattern.size()) != k + l ||
        std::count(al.pattern.begin(), al.pattern.end(), '1') != k ||
        std::count(al.pattern.begin(), al.pattern.end(), '2') != l || al.offset < 0 || al.offset >= l)
        fail(Errc::InvalidAlignment, "pattern must list " + std::to_string(k) + " ones and " + std::to_string(l) +
                                         " twos with an offset below " + std::to_string(l));

    auto raw = raw_crossings(d1);
    int off = d1.num_arcs(), xoff = d1.num_crossings();
    for (auto x : d2.crossings()) {
        x.ui += off;
        x.uo += off;
        x.oi += off;
        x.oo += off;
        raw.push_back(x);
    }
    struct Att {
        int crossing;
        int circle_diag;  // 1 or 2
    };
    std::vector<Att> seq;
    int i1 = 0, i2 = al.offset;
    for (char ch : al.pattern) {
        if (ch == '1') {
            seq.push_back({d1.head(c1[i1++]), 1});
        } else {
            seq.push_back({d2.head(c2[i2 % l]) + xoff, 2});
            ++i2;
        }
    }
    int base = off + d2.num_arcs();
    int n = static_cast<int>(seq.size());
    std::map<int, int> replaced;  // old combined label -> new label
    for (int t = 0; t < n; ++t) {
        RawCrossing& x = raw[seq[t].crossing];
        int in_new = base + t, out_new = base + (t + 1) % n;
        bool first = seq[t].circle_diag == 1;
        const SeifertData& sd = first ? sd1 : sd2;
        int s = first ? s1 : s2;
        int shift = first ? 0 : off;
        if (sd.circle_of_arc[x.ui - shift] == s) {
            replaced[x.ui] = in_new;
            x.ui = in_new;
            x.oo = out_new;
        } else {
            replaced[x.oi] = in_new;
            x.oi = in_new;
            x.uo = out_new;
        }
    }
    std::vector<int> hints;
    auto map_hint = [&](int lab) {
        auto it = replaced.find(lab);
        hints.push_back(it == replaced.end() ? lab : it->second);
    };
    for (int s : d1.comp_starts()) map_hint(s);
    for (int s : d2.comp_starts()) map_hint(s + off);
    try {
        return build_diagram(raw, 0, hints, true);
    } catch (const Error& e) {
        if (e.code() == Errc::NonPlanar) fail(Errc::InvalidAlignment, "alignment does not give a planar diagram");
        throw;
    }
}

// ---------------------------------------------------------------------------
// Reidemeister perturbations

enum class Move { R1, R2, R3 };

namespace detail {

inline Diagram add_kink(const Diagram& d, int arc, bool over_first, int sign) {
    if (d.num_crossings() == 0) {
        RawCrossing x = over_first ? RawCrossing{1, 0, 0, 1, sign} : RawCrossing{0, 1, 1, 0, sign};
        return build_diagram({x}, d.circles() - 1, {0}, true);
    }
    auto raw = raw_crossings(d);
    int loop = fresh_label(raw), tail = loop + 1;
    retarget_in(raw[d.head(arc)], arc, tail);
    if (over_first) {
        raw.push_back(RawCrossing{loop, tail, arc, loop, sign});
    } else {
        raw.push_back(RawCrossing{arc, loop, loop, tail, sign});
    }
    return build_diagram(raw, d.circles(), d.comp_starts(), true);
}

// Pushes the strand of dart e across face-mate dart g, creating a bigon.
inline Diagram add_bigon(const Diagram& d, int e, int g, bool e_over) {
    auto raw = raw_crossings(d);
    int p = e / 2, q = g / 2;
    int se = e % 2 == 0 ? 1 : -1, sg = g % 2 == 0 ? 1 : -1;
    int nl = fresh_label(raw);
    int pm = nl, pe = nl + 1, qm = nl + 2, qe = nl + 3;
    retarget_in(raw[d.head(p)], p, pe);
    retarget_in(raw[d.head(q)], q, qe);
    // Along dart e the new crossings are met as Y1 then Y2; along g as Y2
    // then Y1.
    bool p_y1_first = se > 0;
    bool q_y1_first = sg < 0;
    auto strand = [](int first, int mid, int last, bool at_first) {
        return at_first ? std::pair<int, int>{first, mid} : std::pair<int, int>{mid, last};
    };
    auto [p1_in, p1_out] = strand(p, pm, pe, p_y1_first);
    auto [p2_in, p2_out] = strand(p, pm, pe, !p_y1_first);
    auto [q1_in, q1_out] = strand(q, qm, qe, q_y1_first);
    auto [q2_in, q2_out] = strand(q, qm, qe, !q_y1_first);
    int s1 = se * sg * (e_over ? 1 : -1);
    auto make = [&](int pin, int pout, int qin, int qout, int sign) {
        if (e_over) return RawCrossing{qin, qout, pin, pout, sign};
        return RawCrossing{pin, pout, qin, qout, sign};
    };
    raw.push_back(make(p1_in, p1_out, q1_in, q1_out, s1));
    raw.push_back(make(p2_in, p2_out, q2_in, q2_out, -s1));
    return build_diagram(raw, d.circles(), d.comp_starts(), true);
}

// Triangle faces whose three strands admit a Reidemeister III move.
inline std::vector<int> r3_sites(const Diagram& d) {
    std::vector<int> out;
    const Faces& F = d.faces();
    for (int f = 0; f < F.count(); ++f) {
        const auto& ds = F.darts[f];
        if (ds.size() != 3) continue;
        std::array<int, 3> arcs{ds[0] / 2, ds[1] / 2, ds[2] / 2};
        if (arcs[0] == arcs[1] || arcs[1] == arcs[2] || arcs[0] == arcs[2]) continue;
        std::set<int> xs;
        for (int a : arcs) {
            xs.insert(d.head(a));
            xs.insert(d.tail(a));
        }
        if (xs.size() != 3) continue;
        // An arc is "high" at both ends, "low" at both ends, or mixed.
        int high = 0, low = 0;
        for (int a : arcs) {
            bool h = d.head_over(a), t = d.tail_over(a);
            if (h && t) ++high;
            if (!h && !t) ++low;
        }
        if (high == 1 && low == 1) out.push_back(f);
    }
    return out;
}

inline Diagram apply_r3(const Diagram& d, int f) {
    auto raw = raw_crossings(d);
    const auto& ds = d.faces().darts[f];
    for (int dart : ds) {
        int e = dart / 2;
        int x = d.tail(e), y = d.head(e);
        int before = d.prev_arc(e), after = d.next_arc(e);
        RawCrossing& cx = raw[x];
        RawCrossing& cy = raw[y];
        const Crossing& ox = d.crossing(x);
        const Crossing& oy = d.crossing(y);
        // Strand: before -> x -> e -> y -> after becomes before -> y -> e -> x -> after.
        if (ox.oo == e) {
            cx.oi = e;
            cx.oo = after;
        } else {
            cx.ui = e;
            cx.uo = after;
        }
        if (oy.oi == e) {
            cy.oi = before;
            cy.oo = e;
        } else {
            cy.ui = before;
            cy.uo = e;
        }
    }
    return build_diagram(raw, d.circles(), d.comp_starts(), true);
}

}  // namespace detail

// Applies one Reidemeister move at a site chosen from `seed`.
inline Diagram perturb_reidemeister(const Diagram& d, Move move, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    switch (move) {
        case Move::R1: {
            if (d.num_crossings() == 0 && d.circles() == 0) fail(Errc::NoValidSite, "empty diagram");
            int arc = d.num_arcs() > 0 ? static_cast<int>(rng() % d.num_arcs()) : 0;
            bool over_first = rng() % 2 == 0;
            int sign = rng() % 2 == 0 ? 1 : -1;
            return detail::add_kink(d, arc, over_first, sign);
        }
        case Move::R2: {
            std::vector<std::pair<int, int>> sites;
            const Faces& F = d.faces();
            for (int f = 0; f < F.count(); ++f) {
                const auto& ds = F.darts[f];
                for (size_t i = 0; i < ds.size(); ++i)
                    for (size_t j = 0; j < ds.size(); ++j)
                        if (i != j && ds[i] / 2 != ds[j] / 2) sites.push_back({ds[i], ds[j]});
            }
            if (sites.empty()) fail(Errc::NoValidSite, "no face with two distinct edges");
            auto [e, g] = sites[rng() % sites.size()];
            return detail::add_bigon(d, e, g, rng() % 2 == 0);
        }
        case Move::R3: {
            auto sites = detail::r3_sites(d);
            if (sites.empty()) fail(Errc::NoValidSite, "no triangle admits a Reidemeister III move");
            return detail::apply_r3(d, sites[rng() % sites.size()]);
        }
    }
    fail(Errc::Internal, "unknown move");
}

}  // namespace knotpos
