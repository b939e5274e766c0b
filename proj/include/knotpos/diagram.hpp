#pragma once

// Oriented link diagrams.
//
// A diagram with c crossings has 2c arcs labelled 0..2c-1.  Each arc runs
// from one crossing passage to the next along the orientation.  Arcs of a
// component carry consecutive labels in orientation order, so the successor
// of arc a is a+1 except at the end of the component's label range, where
// it wraps.  Crossingless components are kept only as a count.
//
// A crossing stores its four arcs by role: under-in, under-out, over-in,
// over-out.  Its planar rotation is implied by the sign: counterclockwise
// the slots are (ui, oo, uo, oi) for a positive crossing and
// (ui, oi, uo, oo) for a negative one.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace knotpos {

struct Crossing {
    int ui = 0, uo = 0, oi = 0, oo = 0;
    int sign = 1;

    std::array<int, 4> slots() const {
        if (sign > 0) return {ui, oo, uo, oi};
        return {ui, oi, uo, oo};
    }
    // Slot indices of the four roles.
    int slot_ui() const { return 0; }
    int slot_uo() const { return 2; }
    int slot_oi() const { return sign > 0 ? 3 : 1; }
    int slot_oo() const { return sign > 0 ? 1 : 3; }
    bool slot_is_in(int s) const { return s == 0 || s == slot_oi(); }
};

using RawCrossing = Crossing;

class UnionFind {
public:
    explicit UnionFind(size_t n = 0) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
    int add() {
        p_.push_back(static_cast<int>(p_.size()));
        return static_cast<int>(p_.size()) - 1;
    }
    int find(int a) {
        while (p_[a] != a) a = p_[a] = p_[p_[a]];
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        p_[b] = a;
        return true;
    }
    size_t size() const { return p_.size(); }

private:
    std::vector<int> p_;
};

struct Faces {
    std::vector<int> face_of_dart;         // dart 2a forward, 2a+1 backward
    std::vector<std::vector<int>> darts;   // darts of each face in boundary order
    int count() const { return static_cast<int>(darts.size()); }
    int left(int arc) const { return face_of_dart[2 * arc]; }
    int right(int arc) const { return face_of_dart[2 * arc + 1]; }
};

class Diagram {
public:
    Diagram() = default;

    const std::vector<Crossing>& crossings() const { return x_; }
    const Crossing& crossing(int i) const { return x_[i]; }
    int num_crossings() const { return static_cast<int>(x_.size()); }
    int num_arcs() const { return 2 * num_crossings(); }
    int circles() const { return circles_; }
    // Components that pass through at least one crossing.
    int num_arc_components() const { return static_cast<int>(comp_start_.size()) - 1; }
    int num_components() const { return num_arc_components() + circles_; }
    int comp_begin(int k) const { return comp_start_[k]; }
    int comp_end(int k) const { return comp_start_[k + 1]; }
    int comp_size(int k) const { return comp_end(k) - comp_begin(k); }
    int comp_of_arc(int a) const { return comp_of_arc_[a]; }
    int next_arc(int a) const {
        int k = comp_of_arc_[a];
        return a + 1 == comp_end(k) ? comp_begin(k) : a + 1;
    }
    int prev_arc(int a) const {
        int k = comp_of_arc_[a];
        return a == comp_begin(k) ? comp_end(k) - 1 : a - 1;
    }
    // Crossing at the end of arc a, and whether a arrives there as the over strand.
    int head(int a) const { return head_x_[a]; }
    bool head_over(int a) const { return x_[head_x_[a]].oi == a; }
    int tail(int a) const { return tail_x_[a]; }
    bool tail_over(int a) const { return x_[tail_x_[a]].oo == a; }
    int head_slot(int a) const { return head_slot_[a]; }
    int tail_slot(int a) const { return tail_slot_[a]; }

    int c_plus() const {
        return static_cast<int>(std::count_if(x_.begin(), x_.end(), [](const Crossing& c) { return c.sign > 0; }));
    }
    int c_minus() const { return num_crossings() - c_plus(); }
    int writhe() const { return c_plus() - c_minus(); }

    // Component (in diagram order) of the over and under strand of crossing i.
    int over_comp(int i) const { return comp_of_arc_[x_[i].oi]; }
    int under_comp(int i) const { return comp_of_arc_[x_[i].ui]; }

    // Connected pieces of the crossing graph; crossingless circles are not
    // included.  piece_of_crossing()[i] indexes into 0..num_pieces-1.
    int num_pieces() const { return num_pieces_; }
    const std::vector<int>& piece_of_crossing() const { return piece_of_x_; }
    bool is_connected() const {
        if (num_crossings() == 0) return circles_ <= 1;
        return num_pieces_ == 1 && circles_ == 0;
    }

    const Faces& faces() const { return faces_; }

    // The raw form used by edits: labels are arc ids, start hints are the
    // first arc of each component.
    std::vector<int> comp_starts() const {
        return std::vector<int>(comp_start_.begin(), comp_start_.end() - 1);
    }

    friend Diagram build_diagram(const std::vector<RawCrossing>& raw, int circles, const std::vector<int>& start_hints,
                                 bool check_planar);

private:
    void finalize();

    std::vector<Crossing> x_;
    std::vector<int> comp_start_{0};
    int circles_ = 0;

    std::vector<int> comp_of_arc_, head_x_, tail_x_, head_slot_, tail_slot_;
    std::vector<int> piece_of_x_;
    int num_pieces_ = 0;
    Faces faces_;
};

inline void Diagram::finalize() {
    int n = num_arcs();
    comp_of_arc_.assign(n, -1);
    for (int k = 0; k + 1 < static_cast<int>(comp_start_.size()); ++k)
        for (int a = comp_start_[k]; a < comp_start_[k + 1]; ++a) comp_of_arc_[a] = k;
    head_x_.assign(n, -1);
    tail_x_.assign(n, -1);
    head_slot_.assign(n, -1);
    tail_slot_.assign(n, -1);
    for (int i = 0; i < num_crossings(); ++i) {
        auto s = x_[i].slots();
        for (int j = 0; j < 4; ++j) {
            if (x_[i].slot_is_in(j)) {
                head_x_[s[j]] = i;
                head_slot_[s[j]] = j;
            } else {
                tail_x_[s[j]] = i;
                tail_slot_[s[j]] = j;
            }
        }
    }
    UnionFind uf(x_.size());
    for (int a = 0; a < n; ++a) uf.unite(head_x_[a], tail_x_[a]);
    std::map<int, int> ids;
    piece_of_x_.assign(x_.size(), 0);
    for (int i = 0; i < num_crossings(); ++i) {
        auto [it, fresh] = ids.try_emplace(uf.find(i), static_cast<int>(ids.size()));
        piece_of_x_[i] = it->second;
    }
    num_pieces_ = static_cast<int>(ids.size());

    // Faces: a dart arriving through slot j leaves through slot j-1, which
    // keeps the face on the dart's left.
    faces_.face_of_dart.assign(2 * n, -1);
    faces_.darts.clear();
    for (int d0 = 0; d0 < 2 * n; ++d0) {
        if (faces_.face_of_dart[d0] >= 0) continue;
        int f = faces_.count();
        faces_.darts.emplace_back();
        int d = d0;
        while (faces_.face_of_dart[d] < 0) {
            faces_.face_of_dart[d] = f;
            faces_.darts[f].push_back(d);
            int a = d / 2;
            bool fwd = d % 2 == 0;
            int xi = fwd ? head_x_[a] : tail_x_[a];
            int sj = fwd ? head_slot_[a] : tail_slot_[a];
            int sl = (sj + 3) % 4;
            int b = x_[xi].slots()[sl];
            d = x_[xi].slot_is_in(sl) ? 2 * b + 1 : 2 * b;
        }
    }
}

// Assembles a diagram from crossings with arbitrary integer labels.  Every
// label must occur once as an incoming and once as an outgoing slot.  Start
// hints give the order and first arc of components; components not reached
// from a hint follow in order of their smallest label.
inline Diagram build_diagram(const std::vector<RawCrossing>& raw, int circles, const std::vector<int>& start_hints = {},
                             bool check_planar = true) {
    std::map<int, std::pair<int, int>> in_at, out_at;  // label -> (crossing, is_over)
    auto note = [](std::map<int, std::pair<int, int>>& m, int label, int xi, int over) {
        auto [it, fresh] = m.try_emplace(label, xi, over);
        if (!fresh) fail(Errc::ArcLabelNotTwice, "arc label " + std::to_string(label) + " occurs more than twice");
    };
    for (int i = 0; i < static_cast<int>(raw.size()); ++i) {
        note(in_at, raw[i].ui, i, 0);
        note(in_at, raw[i].oi, i, 1);
        note(out_at, raw[i].uo, i, 0);
        note(out_at, raw[i].oo, i, 1);
    }
    for (const auto& [label, v] : in_at)
        if (!out_at.count(label)) fail(Errc::ArcLabelNotTwice, "arc label " + std::to_string(label) + " occurs once");
    for (const auto& [label, v] : out_at)
        if (!in_at.count(label)) fail(Errc::ArcLabelNotTwice, "arc label " + std::to_string(label) + " occurs once");
    for (const auto& c : raw)
        if (c.sign != 1 && c.sign != -1) fail(Errc::Internal, "crossing sign must be +1 or -1");

    auto next_label = [&](int label) {
        auto [xi, over] = in_at.at(label);
        return over ? raw[xi].oo : raw[xi].uo;
    };
    std::map<int, int> relabel;
    Diagram d;
    d.circles_ = circles;
    auto walk = [&](int start) {
        if (!in_at.count(start) || relabel.count(start)) return;
        int lab = start;
        do {
            relabel[lab] = static_cast<int>(relabel.size());
            lab = next_label(lab);
        } while (lab != start);
        d.comp_start_.push_back(static_cast<int>(relabel.size()));
    };
    for (int h : start_hints) walk(h);
    for (const auto& kv : in_at) walk(kv.first);

    d.x_.resize(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        d.x_[i] = Crossing{relabel.at(raw[i].ui), relabel.at(raw[i].uo), relabel.at(raw[i].oi), relabel.at(raw[i].oo),
                           raw[i].sign};
    }
    d.finalize();

    if (check_planar) {
        std::vector<int> faces_per_piece(d.num_pieces_, 0), x_per_piece(d.num_pieces_, 0);
        for (int i = 0; i < d.num_crossings(); ++i) ++x_per_piece[d.piece_of_x_[i]];
        for (const auto& f : d.faces_.darts) ++faces_per_piece[d.piece_of_x_[d.head_x_[f[0] / 2]]];
        for (int p = 0; p < d.num_pieces_; ++p) {
            int v = x_per_piece[p], e = 2 * v, f = faces_per_piece[p];
            if (v - e + f != 2) fail(Errc::NonPlanar, "Euler characteristic check failed");
        }
    }
    return d;
}

inline std::vector<RawCrossing> raw_crossings(const Diagram& d) { return d.crossings(); }

inline Diagram unknot_diagram(int circles = 1) { return build_diagram({}, circles, {}); }

// ---------------------------------------------------------------------------
// Unoriented input and orientation inference

namespace detail {

// Each entry lists four labels counterclockwise; slots 0 and 2 form the
// under strand.  When `under_slot0_in` is set, slot 0 is the incoming
// under arc (PD convention); otherwise every component may be oriented
// freely and is oriented so that its smallest label is traversed first
// from its lower-indexed occurrence.
inline Diagram orient_unoriented(const std::vector<std::array<int, 4>>& xs, int circles, bool under_slot0_in,
                                 const std::vector<int>& start_hints = {}) {
    struct Occ {
        int x, s;
    };
    std::map<int, std::vector<Occ>> occ;
    for (int i = 0; i < static_cast<int>(xs.size()); ++i)
        for (int s = 0; s < 4; ++s) occ[xs[i][s]].push_back({i, s});
    for (const auto& [label, v] : occ)
        if (v.size() != 2) fail(Errc::ArcLabelNotTwice, "arc label " + std::to_string(label) + " occurs " +
                                                            std::to_string(v.size()) + " time(s)");

    // dir[i][s] = +1 if slot s of crossing i is incoming, -1 if outgoing.
    std::vector<std::array<int, 4>> dir(xs.size(), {0, 0, 0, 0});
    auto other_end = [&](int label, int xi, int s) {
        const auto& v = occ[label];
        if (v[0].x == xi && v[0].s == s) return v[1];
        return v[0];
    };
    // Traverses the component through (xi, s) entering there, marking
    // incoming/outgoing; returns false on a contradiction.
    auto propagate = [&](int xi, int s) {
        int cx = xi, cs = s;
        while (true) {
            if (dir[cx][cs] != 0) return dir[cx][cs] == 1;
            dir[cx][cs] = 1;
            int os = (cs + 2) % 4;
            if (dir[cx][os] != 0 && dir[cx][os] != -1) return false;
            dir[cx][os] = -1;
            Occ nx = other_end(xs[cx][os], cx, os);
            cx = nx.x;
            cs = nx.s;
            if (dir[cx][cs] == -1) return false;
        }
    };
    if (under_slot0_in) {
        for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
            if (dir[i][0] == -1 || !propagate(i, 0))
                fail(Errc::InconsistentOrientation, "under strands disagree on a component's direction");
        }
        // Remaining components pass only over; orient them so that labels
        // increase along the orientation wherever the choice is visible.
        for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
            if (dir[i][1] != 0) continue;
            int votes = 0;
            std::vector<std::pair<int, int>> comp;
            {
                int cx = i, cs = 1;
                while (true) {
                    comp.push_back({cx, cs});
                    int os = (cs + 2) % 4;
                    int a = xs[cx][cs], b = xs[cx][os];
                    if (b == a + 1) ++votes;
                    if (a == b + 1) --votes;
                    Occ nx = other_end(b, cx, os);
                    if (nx.x == i && nx.s == 1) break;
                    cx = nx.x;
                    cs = nx.s;
                }
            }
            if (votes == 0) {
                // Tie (two-arc component): the smaller label heads into the
                // earlier crossing.
                int lo = std::min(xs[i][1], xs[i][3]);
                const auto& v = occ[lo];
                Occ in_end = v[0].x <= v[1].x ? v[0] : v[1];
                if (!propagate(in_end.x, in_end.s)) fail(Errc::InconsistentOrientation, "over-only component");
                continue;
            }
            bool ok = votes > 0 ? propagate(i, 1) : propagate(i, 3);
            if (!ok) fail(Errc::InconsistentOrientation, "over-only component");
        }
    } else {
        std::vector<int> labels;
        for (const auto& kv : occ) labels.push_back(kv.first);
        for (int lab : labels) {
            const auto& v = occ[lab];
            Occ o = v[0].x < v[1].x || (v[0].x == v[1].x && v[0].s < v[1].s) ? v[0] : v[1];
            if (dir[o.x][o.s] != 0) continue;
            Occ other = other_end(lab, o.x, o.s);
            if (!propagate(other.x, other.s)) fail(Errc::Internal, "orientation propagation failed");
        }
    }

    std::vector<RawCrossing> raw(xs.size());
    for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
        int su = dir[i][0] == 1 ? 0 : 2;  // incoming under slot
        int so = dir[i][1] == 1 ? 1 : 3;  // incoming over slot
        int oo_slot = (so + 2) % 4;
        RawCrossing c;
        c.ui = xs[i][su];
        c.uo = xs[i][(su + 2) % 4];
        c.oi = xs[i][so];
        c.oo = xs[i][oo_slot];
        c.sign = oo_slot == (su + 1) % 4 ? 1 : -1;
        raw[i] = c;
    }
    std::vector<int> hints = start_hints;
    if (hints.empty()) {
        // Components in order of their smallest label, each starting there.
        UnionFind uf;
        std::map<int, int> id;
        for (const auto& kv : occ) id[kv.first] = uf.add();
        for (const auto& c : raw) {
            uf.unite(id[c.ui], id[c.uo]);
            uf.unite(id[c.oi], id[c.oo]);
        }
        std::set<int> seen;
        for (const auto& kv : occ) {
            int r = uf.find(id[kv.first]);
            if (seen.insert(r).second) hints.push_back(kv.first);
        }
    }
    return build_diagram(raw, circles, hints, true);
}

inline std::vector<std::array<int, 4>> unoriented_form(const Diagram& d) {
    std::vector<std::array<int, 4>> xs;
    for (const auto& c : d.crossings()) xs.push_back(c.slots());
    return xs;
}

inline void skip_ws(const std::string& s, size_t& p) {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
}
inline bool eat(const std::string& s, size_t& p, char ch) {
    skip_ws(s, p);
    if (p < s.size() && s[p] == ch) {
        ++p;
        return true;
    }
    return false;
}
inline void expect(const std::string& s, size_t& p, char ch) {
    if (!eat(s, p, ch))
        fail(Errc::MalformedSyntax, std::string("expected '") + ch + "' at offset " + std::to_string(p));
}
inline long read_int(const std::string& s, size_t& p) {
    skip_ws(s, p);
    size_t st = p;
    if (p < s.size() && s[p] == '-') ++p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (st == p || (p == st + 1 && s[st] == '-'))
        fail(Errc::MalformedSyntax, "expected integer at offset " + std::to_string(st));
    if (p - st > 9) fail(Errc::MalformedSyntax, "integer too large");
    return std::stol(s.substr(st, p - st));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PD codec

// Accepts "PD[X[i,j,k,l],...]" with an optional "+O<k>" suffix for extra
// crossingless circles, and the bracket form "[[i,j,k,l],...]".  PD[] by
// itself is the unknot.
inline Diagram parse_pd(const std::string& text) {
    using namespace detail;
    size_t p = 0;
    std::vector<std::array<int, 4>> xs;
    skip_ws(text, p);
    auto read_quad = [&](bool with_x) {
        if (with_x) {
            skip_ws(text, p);
            if (p >= text.size() || text[p] != 'X') fail(Errc::MalformedSyntax, "expected X[...]");
            ++p;
        }
        expect(text, p, '[');
        std::array<int, 4> q{};
        for (int k = 0; k < 4; ++k) {
            if (k) expect(text, p, ',');
            long v = read_int(text, p);
            if (v <= 0) fail(Errc::MalformedSyntax, "arc labels must be positive integers");
            q[k] = static_cast<int>(v);
        }
        expect(text, p, ']');
        xs.push_back(q);
    };
    bool explicit_circles = false;
    if (text.compare(p, 2, "PD") == 0) {
        p += 2;
        expect(text, p, '[');
        if (!eat(text, p, ']')) {
            do {
                read_quad(true);
            } while (eat(text, p, ','));
            expect(text, p, ']');
        }
    } else if (eat(text, p, '[')) {
        if (!eat(text, p, ']')) {
            do {
                read_quad(false);
            } while (eat(text, p, ','));
            expect(text, p, ']');
        }
    } else {
        fail(Errc::MalformedSyntax, "PD code must start with 'PD[' or '['");
    }
    int circles = 0;
    while (eat(text, p, '+')) {
        skip_ws(text, p);
        if (p >= text.size() || text[p] != 'O') fail(Errc::MalformedSyntax, "expected O<k> after '+'");
        ++p;
        long k = read_int(text, p);
        if (k < 0) fail(Errc::MalformedSyntax, "negative circle count");
        circles += static_cast<int>(k);
        explicit_circles = true;
    }
    skip_ws(text, p);
    if (p != text.size()) fail(Errc::MalformedSyntax, "trailing characters at offset " + std::to_string(p));
    if (xs.empty() && !explicit_circles) circles = 1;
    if (xs.empty() && circles == 0) fail(Errc::MalformedSyntax, "empty diagram");
    return detail::orient_unoriented(xs, circles, true);
}

inline std::string to_pd(const Diagram& d) {
    // A component that passes only over two crossings is ambiguous in PD
    // form; the parser orients it so its smaller label heads into the
    // earlier crossing, so arc labels are swapped here when needed.
    std::vector<int> lab(d.num_arcs());
    std::iota(lab.begin(), lab.end(), 0);
    for (int k = 0; k < d.num_arc_components(); ++k) {
        if (d.comp_size(k) != 2) continue;
        int a = d.comp_begin(k), b = a + 1;
        if (!d.head_over(a) || !d.head_over(b)) continue;
        if (d.head(a) > d.head(b)) std::swap(lab[a], lab[b]);
    }
    std::ostringstream os;
    os << "PD[";
    for (int i = 0; i < d.num_crossings(); ++i) {
        if (i) os << ",";
        auto s = d.crossing(i).slots();
        os << "X[" << lab[s[0]] + 1 << "," << lab[s[1]] + 1 << "," << lab[s[2]] + 1 << "," << lab[s[3]] + 1 << "]";
    }
    os << "]";
    int extra = d.circles();
    if (d.num_crossings() == 0) {
        if (extra > 1) os << "+O" << extra;
    } else if (extra > 0) {
        os << "+O" << extra;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Signed Gauss code codec

// Components are separated by ';'.  Tokens are O<n><sign> or U<n><sign>.
// An empty component is a crossingless circle.
inline Diagram parse_gauss(const std::string& text) {
    using namespace detail;
    std::vector<std::string> comps;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == ';') {
                comps.push_back(cur);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        comps.push_back(cur);
    }
    struct Tok {
        bool over;
        long n;
        int sign;
    };
    std::vector<std::vector<Tok>> toks;
    int circles = 0;
    for (const auto& c : comps) {
        std::vector<Tok> v;
        size_t p = 0;
        while (p < c.size()) {
            char ou = c[p++];
            if (ou != 'O' && ou != 'U') fail(Errc::MalformedSyntax, "expected O or U in Gauss code");
            size_t st = p;
            while (p < c.size() && std::isdigit(static_cast<unsigned char>(c[p]))) ++p;
            if (st == p || p - st > 9) fail(Errc::MalformedSyntax, "expected crossing number in Gauss code");
            long n = std::stol(c.substr(st, p - st));
            if (p >= c.size() || (c[p] != '+' && c[p] != '-'))
                fail(Errc::MalformedSyntax, "expected sign after crossing number");
            int sg = c[p++] == '+' ? 1 : -1;
            v.push_back({ou == 'O', n, sg});
        }
        if (v.empty()) {
            ++circles;
        } else {
            toks.push_back(std::move(v));
        }
    }
    struct Seen {
        int over = -1, under = -1;  // token index (global arc of incoming)
        int sign = 0;
        int over_out = -1, under_out = -1;
    };
    std::map<long, Seen> xs;
    std::vector<int> hints;
    int next = 0;
    for (const auto& v : toks) {
        int base = next;
        int k = static_cast<int>(v.size());
        hints.push_back(base + k - 1);
        for (int t = 0; t < k; ++t) {
            int in_arc = base + (t + k - 1) % k;
            int out_arc = base + t;
            Seen& s = xs[v[t].n];
            if (s.sign != 0 && s.sign != v[t].sign)
                fail(Errc::MalformedSyntax, "crossing " + std::to_string(v[t].n) + " has inconsistent signs");
            s.sign = v[t].sign;
            int& slot_in = v[t].over ? s.over : s.under;
            int& slot_out = v[t].over ? s.over_out : s.under_out;
            if (slot_in >= 0)
                fail(Errc::UnpairedCrossing, "crossing " + std::to_string(v[t].n) + " repeats a passage");
            slot_in = in_arc;
            slot_out = out_arc;
        }
        next += k;
    }
    std::vector<RawCrossing> raw;
    for (const auto& [n, s] : xs) {
        if (s.over < 0 || s.under < 0)
            fail(Errc::UnpairedCrossing, "crossing " + std::to_string(n) + " lacks an over or under passage");
        raw.push_back(RawCrossing{s.under, s.under_out, s.over, s.over_out, s.sign});
    }
    if (raw.empty() && circles == 0) circles = 1;
    try {
        return build_diagram(raw, circles, hints, true);
    } catch (const Error& e) {
        if (e.code() == Errc::NonPlanar) fail(Errc::NonRealizable, "signed Gauss code has no planar realization");
        throw;
    }
}

inline std::string to_gauss(const Diagram& d) {
    std::ostringstream os;
    for (int k = 0; k < d.num_arc_components(); ++k) {
        if (k) os << ";";
        int start = d.comp_begin(k);
        int a = start;
        do {
            int h = d.head(a);
            bool ov = d.head_over(a);
            os << (ov ? 'O' : 'U') << h + 1 << (d.crossing(h).sign > 0 ? '+' : '-');
            a = d.next_arc(a);
        } while (a != start);
    }
    for (int i = 0; i < d.circles(); ++i) {
        if (d.num_arc_components() > 0 || i > 0) os << ";";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Gauss diagrams

struct Passage {
    int crossing;
    bool over;
};

// Passages met walking component k from the start of arc `from`.
inline std::vector<Passage> walk_component(const Diagram& d, int from) {
    std::vector<Passage> out;
    int a = from;
    do {
        out.push_back({d.head(a), d.head_over(a)});
        a = d.next_arc(a);
    } while (a != from);
    return out;
}

struct GaussArrow {
    int crossing;
    int tail;  // walk-along position of the over passage
    int head;  // walk-along position of the under passage
    int sign;
};

struct GaussDiagram {
    std::vector<int> order;                       // component indices in walk order
    std::vector<int> basepoints;                  // arc carrying each component's base point
    std::vector<std::vector<Passage>> circles;    // passages per based circle
    std::vector<int> circle_offset;               // global position of each circle's first passage
    std::vector<GaussArrow> arrows;               // indexed by crossing
    int circle_of_position(int pos) const {
        int k = static_cast<int>(std::upper_bound(circle_offset.begin(), circle_offset.end(), pos) -
                                 circle_offset.begin()) -
                1;
        return k;
    }
};

// Builds the Gauss diagram for a component order (a permutation of
// 0..num_arc_components-1) and one basepoint arc per listed component.
// Empty arguments select the diagram's own order and basepoints.
inline GaussDiagram to_gauss_diagram(const Diagram& d, std::vector<int> order = {}, std::vector<int> basepoints = {}) {
    int m = d.num_arc_components();
    if (order.empty()) {
        order.resize(m);
        std::iota(order.begin(), order.end(), 0);
    }
    if (basepoints.empty())
        for (int k : order) basepoints.push_back(d.comp_begin(k));
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
        if (sorted[i] != i || static_cast<int>(sorted.size()) != m)
            fail(Errc::BasepointOffComponent, "component order is not a permutation");
    if (basepoints.size() != order.size()) fail(Errc::BasepointOffComponent, "one basepoint per component required");
    GaussDiagram g;
    g.order = order;
    g.basepoints = basepoints;
    g.arrows.assign(d.num_crossings(), GaussArrow{-1, -1, -1, 0});
    int pos = 0;
    for (size_t i = 0; i < order.size(); ++i) {
        int b = basepoints[i];
        if (b < 0 || b >= d.num_arcs() || d.comp_of_arc(b) != order[i])
            fail(Errc::BasepointOffComponent, "basepoint arc is not on its component");
        g.circle_offset.push_back(pos);
        g.circles.push_back(walk_component(d, b));
        for (const auto& ps : g.circles.back()) {
            auto& ar = g.arrows[ps.crossing];
            ar.crossing = ps.crossing;
            ar.sign = d.crossing(ps.crossing).sign;
            (ps.over ? ar.tail : ar.head) = pos;
            ++pos;
        }
    }
    return g;
}

// Sum of signs over arrows with tail (over) on circle j and head (under) on
// circle i, positions referring to g's circle list.
inline int linking_number(const GaussDiagram& g, int i, int j) {
    int s = 0;
    for (const auto& ar : g.arrows) {
        if (ar.crossing < 0) continue;
        if (g.circle_of_position(ar.tail) == j && g.circle_of_position(ar.head) == i) s += ar.sign;
    }
    return s;
}

// Linking number of diagram components i and j (i != j).
inline int linking_number(const Diagram& d, int i, int j) {
    int s = 0;
    for (int k = 0; k < d.num_crossings(); ++k)
        if (d.over_comp(k) == j && d.under_comp(k) == i) s += d.crossing(k).sign;
    return s;
}

// ---------------------------------------------------------------------------
// Canonical key

namespace detail {

inline std::vector<int> key_tokens(const Diagram& d, int from, std::vector<int>& num, int& next_num) {
    std::vector<int> t;
    int a = from;
    do {
        int h = d.head(a);
        if (num[h] < 0) num[h] = next_num++;
        t.push_back(num[h] * 4 + (d.head_over(a) ? 0 : 2) + (d.crossing(h).sign < 0 ? 1 : 0));
        a = d.next_arc(a);
    } while (a != from);
    return t;
}

}  // namespace detail

// Lexicographically least signed Gauss sequence over all component orders
// and basepoints, prefixed by the component and circle counts.
inline std::string canonical_key(const Diagram& d) {
    struct State {
        std::vector<int> num;
        int next;
        std::vector<char> used;
    };
    int m = d.num_arc_components();
    std::vector<State> states{State{std::vector<int>(d.num_crossings(), -1), 0, std::vector<char>(m, 0)}};
    std::vector<int> seq;
    for (int step = 0; step < m; ++step) {
        std::vector<int> best;
        std::vector<State> next_states;
        bool have = false;
        for (const auto& st : states) {
            for (int k = 0; k < m; ++k) {
                if (st.used[k]) continue;
                for (int b = d.comp_begin(k); b < d.comp_end(k); ++b) {
                    State ns = st;
                    auto t = detail::key_tokens(d, b, ns.num, ns.next);
                    ns.used[k] = 1;
                    if (!have || t < best) {
                        best = t;
                        next_states.clear();
                        have = true;
                    }
                    if (t == best) next_states.push_back(std::move(ns));
                }
            }
        }
        // States reaching the same numbering are interchangeable.
        std::sort(next_states.begin(), next_states.end(), [](const State& a, const State& b) {
            return std::tie(a.num, a.used) < std::tie(b.num, b.used);
        });
        next_states.erase(std::unique(next_states.begin(), next_states.end(),
                                      [](const State& a, const State& b) { return a.num == b.num && a.used == b.used; }),
                          next_states.end());
        states = std::move(next_states);
        seq.insert(seq.end(), best.begin(), best.end());
        seq.push_back(-1);
    }
    std::string key = std::to_string(m) + "," + std::to_string(d.circles()) + "|";
    for (int t : seq) {
        key += t < 0 ? std::string(";") : std::to_string(t) + ".";
    }
    return key;
}

// ---------------------------------------------------------------------------
// Elementary edits

inline void check_crossing(const Diagram& d, int c) {
    if (c < 0 || c >= d.num_crossings()) fail(Errc::NoSuchCrossing, "crossing " + std::to_string(c) + " does not exist");
}

inline Diagram crossing_change(const Diagram& d, int c) {
    check_crossing(d, c);
    auto raw = raw_crossings(d);
    Crossing& x = raw[c];
    x = Crossing{x.oi, x.oo, x.ui, x.uo, -x.sign};
    return build_diagram(raw, d.circles(), d.comp_starts(), false);
}

inline Diagram mirror(const Diagram& d) {
    auto raw = raw_crossings(d);
    for (auto& x : raw) x = Crossing{x.oi, x.oo, x.ui, x.uo, -x.sign};
    return build_diagram(raw, d.circles(), d.comp_starts(), false);
}

// Oriented smoothing.  Merged components keep the earlier component's
// basepoint; when a component splits, the part through its basepoint stays
// in place and the other part follows it, based just after the crossing.
inline Diagram smooth(const Diagram& d, int c) {
    check_crossing(d, c);
    const Crossing x = d.crossing(c);
    UnionFind uf(d.num_arcs());
    uf.unite(x.ui, x.oo);
    uf.unite(x.oi, x.uo);
    std::vector<RawCrossing> raw;
    std::set<int> present;
    for (int i = 0; i < d.num_crossings(); ++i) {
        if (i == c) continue;
        Crossing y = d.crossing(i);
        y.ui = uf.find(y.ui);
        y.uo = uf.find(y.uo);
        y.oi = uf.find(y.oi);
        y.oo = uf.find(y.oo);
        for (int l : {y.ui, y.uo, y.oi, y.oo}) present.insert(l);
        raw.push_back(y);
    }
    int circles = d.circles();
    std::set<int> merged{uf.find(x.ui), uf.find(x.oi)};
    for (int l : merged)
        if (!present.count(l)) ++circles;

    std::vector<int> hints;
    int kc = d.comp_of_arc(x.ui);
    bool self = d.comp_of_arc(x.oi) == kc;
    for (int k = 0; k < d.num_arc_components(); ++k) {
        int s = d.comp_begin(k);
        hints.push_back(uf.find(s));
        if (self && k == kc) {
            // Arcs oo..ui form one part, uo..oi the other.
            bool in_a = false;
            int a = x.oo;
            while (true) {
                if (a == s) in_a = true;
                if (a == x.ui) break;
                a = d.next_arc(a);
            }
            hints.push_back(uf.find(in_a ? x.uo : x.oo));
        }
    }
    return build_diagram(raw, circles, hints, false);
}

// The smoothing that does not respect orientation, reoriented.
inline Diagram smooth_unoriented(const Diagram& d, int c) {
    check_crossing(d, c);
    const Crossing x = d.crossing(c);
    UnionFind uf(d.num_arcs());
    uf.unite(x.ui, x.oi);
    uf.unite(x.uo, x.oo);
    std::vector<std::array<int, 4>> xs;
    std::set<int> present;
    for (int i = 0; i < d.num_crossings(); ++i) {
        if (i == c) continue;
        auto s = d.crossing(i).slots();
        for (auto& l : s) {
            l = uf.find(l);
            present.insert(l);
        }
        xs.push_back(s);
    }
    int circles = d.circles();
    std::set<int> merged{uf.find(x.ui), uf.find(x.uo)};
    for (int l : merged)
        if (!present.count(l)) ++circles;
    if (xs.empty()) return unknot_diagram(circles);
    return detail::orient_unoriented(xs, circles, false);
}

// Reverses the orientation of every component.
inline Diagram reverse(const Diagram& d) {
    std::vector<RawCrossing> raw;
    for (const auto& x : d.crossings()) raw.push_back(Crossing{x.uo, x.ui, x.oo, x.oi, x.sign});
    std::vector<int> hints;
    for (int k = 0; k < d.num_arc_components(); ++k) hints.push_back(d.comp_end(k) - 1);
    return build_diagram(raw, d.circles(), hints, false);
}

// Moves component `k` to the front and bases it at arc `start`; the other
// components keep their relative order and basepoints.
inline Diagram rebase(const Diagram& d, const std::vector<int>& order, const std::vector<int>& starts) {
    std::vector<int> hints;
    for (size_t i = 0; i < order.size(); ++i) hints.push_back(starts[i]);
    for (int k = 0; k < d.num_arc_components(); ++k)
        if (std::find(order.begin(), order.end(), k) == order.end()) hints.push_back(d.comp_begin(k));
    return build_diagram(raw_crossings(d), d.circles(), hints, false);
}

// Removes crossing c by a Reidemeister I move if it is a kink.  Returns
// nullopt when c is not a kink.
inline std::optional<Diagram> remove_kink(const Diagram& d, int c) {
    const Crossing x = d.crossing(c);
    bool loop_a = x.oo == x.ui, loop_b = x.uo == x.oi;
    if (!loop_a && !loop_b) return std::nullopt;
    UnionFind uf(d.num_arcs());
    int circles = d.circles();
    if (loop_a && loop_b) {
        ++circles;
    } else if (loop_a) {
        uf.unite(x.oi, x.uo);
    } else {
        uf.unite(x.ui, x.oo);
    }
    std::vector<RawCrossing> raw;
    for (int i = 0; i < d.num_crossings(); ++i) {
        if (i == c) continue;
        Crossing y = d.crossing(i);
        y.ui = uf.find(y.ui);
        y.uo = uf.find(y.uo);
        y.oi = uf.find(y.oi);
        y.oo = uf.find(y.oo);
        raw.push_back(y);
    }
    std::vector<int> hints;
    for (int k = 0; k < d.num_arc_components(); ++k) {
        int s = d.comp_begin(k);
        if ((loop_a && s == x.ui) || (loop_b && s == x.oi)) s = loop_a ? x.oi : x.ui;
        hints.push_back(uf.find(s));
    }
    return build_diagram(raw, circles, hints, false);
}

// Removes a pair of crossings bounding a bigon face in which one strand
// passes over both.  Returns nullopt when face f is not such a bigon.
inline std::optional<Diagram> remove_bigon(const Diagram& d, int f) {
    const auto& fd = d.faces().darts[f];
    if (fd.size() != 2) return std::nullopt;
    int e1 = fd[0] / 2, e2 = fd[1] / 2;
    if (e1 == e2) return std::nullopt;
    int X = d.head(e1), Y = d.tail(e1);
    if (X == Y) return std::nullopt;
    // Arc e1 runs from Y to X; e2 joins the same two crossings.
    if (!((d.head(e2) == X && d.tail(e2) == Y) || (d.head(e2) == Y && d.tail(e2) == X))) return std::nullopt;
    if (d.head_over(e1) != d.tail_over(e1)) return std::nullopt;
    if (d.head_over(e2) != d.tail_over(e2)) return std::nullopt;
    UnionFind uf(d.num_arcs());
    int circles = d.circles();
    auto collapse = [&](int e) {
        int p = d.prev_arc(e), q = d.next_arc(e);
        uf.unite(p, e);
        uf.unite(e, q);
    };
    collapse(e1);
    collapse(e2);
    std::vector<RawCrossing> raw;
    std::set<int> present;
    for (int i = 0; i < d.num_crossings(); ++i) {
        if (i == X || i == Y) continue;
        Crossing y = d.crossing(i);
        y.ui = uf.find(y.ui);
        y.uo = uf.find(y.uo);
        y.oi = uf.find(y.oi);
        y.oo = uf.find(y.oo);
        for (int l : {y.ui, y.uo, y.oi, y.oo}) present.insert(l);
        raw.push_back(y);
    }
    std::set<int> classes{uf.find(e1), uf.find(e2)};
    for (int l : classes)
        if (!present.count(l)) ++circles;
    std::vector<int> hints;
    for (int k = 0; k < d.num_arc_components(); ++k) hints.push_back(uf.find(d.comp_begin(k)));
    return build_diagram(raw, circles, hints, false);
}

// Repeatedly removes kinks and removable bigons.
inline Diagram simplify(Diagram d) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (int c = 0; c < d.num_crossings(); ++c) {
            if (auto r = remove_kink(d, c)) {
                d = std::move(*r);
                changed = true;
                break;
            }
        }
        if (changed) continue;
        for (int f = 0; f < d.faces().count(); ++f) {
            if (auto r = remove_bigon(d, f)) {
                d = std::move(*r);
                changed = true;
                break;
            }
        }
    }
    return d;
}

// Splits a diagram into its connected pieces; each crossingless circle is a
// piece of its own.
inline std::vector<Diagram> split_pieces(const Diagram& d) {
    std::vector<Diagram> out;
    int np = d.num_pieces();
    for (int p = 0; p < np; ++p) {
        std::vector<RawCrossing> raw;
        for (int i = 0; i < d.num_crossings(); ++i)
            if (d.piece_of_crossing()[i] == p) raw.push_back(d.crossing(i));
        std::vector<int> hints;
        for (int k = 0; k < d.num_arc_components(); ++k)
            if (d.piece_of_crossing()[d.head(d.comp_begin(k))] == p) hints.push_back(d.comp_begin(k));
        out.push_back(build_diagram(raw, 0, hints, false));
    }
    for (int i = 0; i < d.circles(); ++i) out.push_back(unknot_diagram(1));
    return out;
}

// Disjoint union placing b beside a.
inline Diagram disjoint_union(const Diagram& a, const Diagram& b) {
    auto raw = raw_crossings(a);
    int off = a.num_arcs();
    for (auto x : b.crossings()) {
        x.ui += off;
        x.uo += off;
        x.oi += off;
        x.oo += off;
        raw.push_back(x);
    }
    std::vector<int> hints = a.comp_starts();
    for (int s : b.comp_starts()) hints.push_back(s + off);
    return build_diagram(raw, a.circles() + b.circles(), hints, false);
}

// Connected sum along the first arcs of component k1 of d1 and k2 of d2.
// Indices past the arc components refer to crossingless circles.
inline Diagram connected_sum(const Diagram& d1, int k1, const Diagram& d2, int k2) {
    if (k1 < 0 || k1 >= d1.num_components() || k2 < 0 || k2 >= d2.num_components())
        fail(Errc::BasepointOffComponent, "no such component");
    bool c1 = k1 >= d1.num_arc_components(), c2 = k2 >= d2.num_arc_components();
    if (c1 || c2) {
        Diagram u = disjoint_union(d1, d2);
        return build_diagram(raw_crossings(u), u.circles() - 1, u.comp_starts(), false);
    }
    int off = d1.num_arcs();
    int e1 = d1.comp_begin(k1), e2 = d2.comp_begin(k2) + off;
    std::vector<RawCrossing> raw = raw_crossings(d1);
    for (auto x : d2.crossings()) {
        x.ui += off;
        x.uo += off;
        x.oi += off;
        x.oo += off;
        raw.push_back(x);
    }
    int h1 = d1.head(d1.comp_begin(k1)), h2 = d2.head(d2.comp_begin(k2)) + d1.num_crossings();
    auto retarget = [](Crossing& x, int from, int to) {
        if (x.ui == from) {
            x.ui = to;
        } else if (x.oi == from) {
            x.oi = to;
        }
    };
    retarget(raw[h1], e1, -1);
    retarget(raw[h2], e2, e1);
    retarget(raw[h1], -1, e2);
    std::vector<int> hints;
    for (int s : d1.comp_starts()) hints.push_back(s);
    for (int s : d2.comp_starts()) hints.push_back(s + off);
    return build_diagram(raw, d1.circles() + d2.circles(), hints, true);
}

// Closure of a braid on `strands` strands.  Generator +i crosses strands i
// and i+1 (1-based) positively, -i negatively.  Strands untouched by the
// word become crossingless circles.
inline Diagram braid_closure(int strands, const std::vector<int>& word) {
    if (strands < 1) fail(Errc::MalformedSyntax, "a braid needs at least one strand");
    std::vector<int> top(strands), cur(strands);
    std::iota(top.begin(), top.end(), 0);
    cur = top;
    int next = strands;
    std::vector<RawCrossing> raw;
    for (int g : word) {
        int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands) fail(Errc::MalformedSyntax, "braid generator out of range");
        int a = cur[i], b = cur[i + 1];
        int a2 = next++, b2 = next++;
        // Strand a moves right, strand b moves left.
        if (g > 0) {
            raw.push_back(Crossing{a, a2, b, b2, 1});
        } else {
            raw.push_back(Crossing{b, b2, a, a2, -1});
        }
        cur[i] = b2;
        cur[i + 1] = a2;
    }
    UnionFind uf(next);
    int circles = 0;
    for (int p = 0; p < strands; ++p) {
        if (cur[p] == top[p]) {
            ++circles;
        } else {
            uf.unite(cur[p], top[p]);
        }
    }
    for (auto& x : raw) {
        x.ui = uf.find(x.ui);
        x.uo = uf.find(x.uo);
        x.oi = uf.find(x.oi);
        x.oo = uf.find(x.oo);
    }
    return build_diagram(raw, circles, {}, true);
}

}  // namespace knotpos
