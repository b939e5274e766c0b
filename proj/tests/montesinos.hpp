#pragma once

// Small tangle calculus for building Montesinos link diagrams as PD codes.
// A crossing has four slots in counterclockwise order NW, SW, SE, NE; the
// strands are slots {0,2} and {1,3}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <knotpos/diagram.hpp>

namespace knotpos::testing {

struct Tangle {
    std::vector<bool> under02;  // per crossing: the NW-SE strand passes under
    std::map<int, int> wire;    // endpoint -> endpoint, symmetric; endpoint = 4 * crossing + slot
    int nw = 0, sw = 0, se = 0, ne = 0;
};

inline void join(Tangle& t, int a, int b) {
    t.wire[a] = b;
    t.wire[b] = a;
}

inline Tangle crossing_tangle(bool under02) {
    Tangle t;
    t.under02 = {under02};
    t.nw = 0, t.sw = 1, t.se = 2, t.ne = 3;
    return t;
}

// Copies u into t with shifted crossing indices; returns the shift.
inline int absorb(Tangle& t, const Tangle& u) {
    int shift = 4 * static_cast<int>(t.under02.size());
    t.under02.insert(t.under02.end(), u.under02.begin(), u.under02.end());
    for (auto [a, b] : u.wire) t.wire[a + shift] = b + shift;
    return shift;
}

inline Tangle tangle_sum(Tangle t, const Tangle& u) {
    int s = absorb(t, u);
    join(t, t.ne, u.nw + s);
    join(t, t.se, u.sw + s);
    t.ne = u.ne + s;
    t.se = u.se + s;
    return t;
}

// t stacked above u.
inline Tangle tangle_product(Tangle t, const Tangle& u) {
    int s = absorb(t, u);
    join(t, t.sw, u.nw + s);
    join(t, t.se, u.ne + s);
    t.sw = u.sw + s;
    t.se = u.se + s;
    return t;
}

inline Tangle rotate(Tangle t) {
    Tangle r = t;
    r.nw = t.ne, r.sw = t.nw, r.se = t.sw, r.ne = t.se;
    return r;
}

inline Tangle mirror_tangle(Tangle t) {
    for (size_t i = 0; i < t.under02.size(); ++i) t.under02[i] = !t.under02[i];
    return t;
}

inline Tangle reciprocal(const Tangle& t) { return mirror_tangle(rotate(t)); }

// The rational tangle with continued fraction [a1, ..., ak]: start with
// a1 horizontal twists, then alternately invert and add.
inline Tangle rational_tangle(const std::vector<int>& cf, bool chirality) {
    auto twists = [&](int n) {
        Tangle t = crossing_tangle(chirality);
        for (int i = 1; i < n; ++i) t = tangle_sum(t, crossing_tangle(chirality));
        return t;
    };
    Tangle t = twists(cf[0]);
    for (size_t i = 1; i < cf.size(); ++i) t = tangle_sum(reciprocal(t), twists(cf[i]));
    return t;
}

// PD code of the numerator closure; `reverse[k]` flips the orientation of
// the k-th component found.
inline std::string numerator_closure_pd(Tangle t, const std::vector<bool>& reverse) {
    join(t, t.nw, t.ne);
    join(t, t.sw, t.se);
    int n = static_cast<int>(t.under02.size());
    std::vector<int> label(4 * n, 0);
    std::vector<int> in_slot_of_strand(4 * n, -1);  // endpoint -> 1 if the walk enters there
    int next = 1, comp = 0;
    for (int start = 0; start < 4 * n; ++start) {
        if (label[start]) continue;
        int e = start;
        if (comp < static_cast<int>(reverse.size()) && reverse[comp]) e = (start & ~3) | ((start + 2) & 3);
        ++comp;
        // e is the slot where the walk enters a crossing.
        while (true) {
            int out = (e & ~3) | ((e + 2) & 3);
            in_slot_of_strand[e] = 1;
            int partner = t.wire.at(out);
            if (label[out]) break;
            label[out] = label[partner] = next++;
            e = partner;
        }
    }
    std::string pd = "PD[";
    for (int c = 0; c < n; ++c) {
        int under_a = t.under02[c] ? 0 : 1;
        int start = in_slot_of_strand[4 * c + under_a] == 1 ? under_a : under_a + 2;
        pd += (c ? ",X[" : "X[");
        for (int k = 0; k < 4; ++k) pd += (k ? "," : "") + std::to_string(label[4 * c + (start + k) % 4]);
        pd += "]";
    }
    return pd + "]";
}

// The Montesinos link M(2/3 x n, 1/2 x m), oriented so that the diagram is
// positive when such an orientation exists.
inline std::optional<Diagram> montesinos_positive(int m, int n) {
    const bool chirality = false;
    std::optional<Tangle> t;
    auto add = [&](const Tangle& u) { t = t ? tangle_sum(*t, u) : u; };
    Tangle two_thirds = reciprocal(rational_tangle({2, 1}, chirality));
    Tangle half = reciprocal(rational_tangle({2}, chirality));
    for (int i = 0; i < n; ++i) add(two_thirds);
    for (int i = 0; i < m; ++i) add(half);
    for (int mask = 0; mask < (1 << 8); ++mask) {
        std::vector<bool> rev;
        for (int k = 0; k < 8; ++k) rev.push_back((mask >> k) & 1);
        Diagram d = parse_pd(numerator_closure_pd(*t, rev));
        if (d.c_minus() == 0) return d;
        if (mask + 1 >= (1 << d.num_components())) break;
    }
    return std::nullopt;
}

}  // namespace knotpos::testing
