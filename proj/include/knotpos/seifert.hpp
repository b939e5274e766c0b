#pragma once

// Seifert's algorithm and checkerboard data.
//
// Smoothing every crossing along the orientation turns the diagram into
// Seifert circles.  Each crossing becomes a twisted band between the two
// circles it touches.  At a crossing, the left circle C_L is the one whose
// strand lies on the left when both smoothed strands point the same way.

#include <array>
#include <map>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "diagram.hpp"
#include "linalg.hpp"

namespace knotpos {

namespace detail {

// Face of the sector between slots j and j+1 (counterclockwise) at crossing x.
inline int sector_face(const Diagram& d, int x, int j) {
    const Crossing& c = d.crossing(x);
    int s = (j + 1) % 4;
    int arc = c.slots()[s];
    int dart = c.slot_is_in(s) ? 2 * arc : 2 * arc + 1;
    return d.faces().face_of_dart[dart];
}

// Sectors merged by the oriented smoothing (between the two outgoing and
// between the two incoming strands).
inline std::array<int, 2> ns_sectors(const Crossing& c) {
    if (c.sign > 0) return {1, 3};
    return {2, 0};
}

inline std::array<int, 2> we_sectors(const Crossing& c) {
    if (c.sign > 0) return {0, 2};
    return {1, 3};
}

inline int largest_face(const Diagram& d, int piece) {
    int best = -1;
    size_t best_size = 0;
    for (int f = 0; f < d.faces().count(); ++f) {
        const auto& ds = d.faces().darts[f];
        if (d.piece_of_crossing()[d.head(ds[0] / 2)] != piece) continue;
        if (best < 0 || ds.size() > best_size) {
            best = f;
            best_size = ds.size();
        }
    }
    return best;
}

inline int piece_of_face(const Diagram& d, int f) { return d.piece_of_crossing()[d.head(d.faces().darts[f][0] / 2)]; }

}  // namespace detail

struct SeifertEdge {
    int crossing;
    int left;   // C_L
    int right;  // C_R
    int sign;
};

struct SeifertData {
    std::vector<std::vector<int>> circles;  // arcs in order; empty for crossingless components
    std::vector<int> circle_of_arc;
    std::vector<int> index_on_circle;       // position of each arc within its circle
    std::vector<SeifertEdge> edges;         // one per crossing, indexed by crossing

    // Regions of the plane cut along the circles: faces merged across the
    // smoothed crossings.
    std::vector<int> region_of_face;
    int num_regions = 0;
    std::vector<int> root_region;           // per piece
    std::vector<int> outer_face;            // per piece
    std::vector<int> inner_region;          // per circle: side away from the root
    std::vector<int> outer_region;          // per circle: side towards the root
    std::vector<int> parent;                // enclosing circle, or -1
    std::vector<char> ccw;                  // interior on the left
    std::vector<int> piece_of_circle;       // -1 for crossingless circles

    int s = 0;
    int c = 0;
    int chi = 0;
    int genus = 0;
    int sl = 0;

    int num_circles() const { return static_cast<int>(circles.size()); }
    // True if circle a lies inside circle b.
    bool nested_in(int a, int b) const {
        for (int p = parent[a]; p >= 0; p = parent[p])
            if (p == b) return true;
        return false;
    }
    // Circles that bound region r.
    std::vector<int> circles_of_region(int r) const {
        std::vector<int> out;
        for (int k = 0; k < num_circles(); ++k)
            if (piece_of_circle[k] >= 0 && (inner_region[k] == r || outer_region[k] == r)) out.push_back(k);
        return out;
    }
};

// The circle reached next along a Seifert circle after arriving on arc a.
inline int seifert_successor(const Diagram& d, int a) {
    const Crossing& x = d.crossing(d.head(a));
    return x.ui == a ? x.oo : x.uo;
}

// `outer_face` selects the unbounded face of the piece containing it; the
// other pieces use their largest face.
inline SeifertData seifert_data(const Diagram& d, int outer_face = -1) {
    SeifertData sd;
    int n = d.num_arcs();
    sd.c = d.num_crossings();
    sd.circle_of_arc.assign(n, -1);
    sd.index_on_circle.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (sd.circle_of_arc[a] >= 0) continue;
        int k = sd.num_circles();
        sd.circles.emplace_back();
        int b = a;
        do {
            sd.circle_of_arc[b] = k;
            sd.index_on_circle[b] = static_cast<int>(sd.circles[k].size());
            sd.circles[k].push_back(b);
            b = seifert_successor(d, b);
        } while (b != a);
    }
    int arc_circles = sd.num_circles();
    for (int i = 0; i < d.circles(); ++i) sd.circles.emplace_back();

    for (int x = 0; x < d.num_crossings(); ++x) {
        const Crossing& c = d.crossing(x);
        int co = sd.circle_of_arc[c.oi], cu = sd.circle_of_arc[c.ui];
        if (c.sign > 0) {
            sd.edges.push_back({x, co, cu, 1});
        } else {
            sd.edges.push_back({x, cu, co, -1});
        }
    }

    const Faces& F = d.faces();
    UnionFind uf(F.count());
    for (int x = 0; x < d.num_crossings(); ++x) {
        auto ns = detail::ns_sectors(d.crossing(x));
        uf.unite(detail::sector_face(d, x, ns[0]), detail::sector_face(d, x, ns[1]));
    }
    std::map<int, int> rid;
    sd.region_of_face.assign(F.count(), -1);
    for (int f = 0; f < F.count(); ++f) {
        auto [it, fresh] = rid.try_emplace(uf.find(f), static_cast<int>(rid.size()));
        sd.region_of_face[f] = it->second;
    }
    sd.num_regions = static_cast<int>(rid.size());

    int total = sd.num_circles();
    sd.inner_region.assign(total, -1);
    sd.outer_region.assign(total, -1);
    sd.parent.assign(total, -1);
    sd.ccw.assign(total, 1);
    sd.piece_of_circle.assign(total, -1);
    std::vector<int> lreg(arc_circles), rreg(arc_circles);
    for (int k = 0; k < arc_circles; ++k) {
        int a = sd.circles[k][0];
        lreg[k] = sd.region_of_face[F.left(a)];
        rreg[k] = sd.region_of_face[F.right(a)];
        sd.piece_of_circle[k] = d.piece_of_crossing()[d.head(a)];
    }
    std::vector<std::vector<int>> circles_at(sd.num_regions);
    for (int k = 0; k < arc_circles; ++k) {
        circles_at[lreg[k]].push_back(k);
        circles_at[rreg[k]].push_back(k);
    }
    int pieces = d.num_pieces();
    sd.root_region.assign(pieces, -1);
    sd.outer_face.assign(pieces, -1);
    for (int p = 0; p < pieces; ++p) {
        int f = detail::largest_face(d, p);
        if (outer_face >= 0 && outer_face < F.count() && detail::piece_of_face(d, outer_face) == p) f = outer_face;
        sd.outer_face[p] = f;
        int root = sd.region_of_face[f];
        sd.root_region[p] = root;
        // Breadth-first search over the tree of regions.
        std::vector<int> circle_above(sd.num_regions, -1);
        std::vector<char> seen(sd.num_regions, 0);
        std::queue<int> q;
        q.push(root);
        seen[root] = 1;
        while (!q.empty()) {
            int r = q.front();
            q.pop();
            for (int k : circles_at[r]) {
                int other = lreg[k] == r ? rreg[k] : lreg[k];
                if (seen[other]) continue;
                seen[other] = 1;
                sd.outer_region[k] = r;
                sd.inner_region[k] = other;
                sd.parent[k] = circle_above[r];
                sd.ccw[k] = lreg[k] == other;
                circle_above[other] = k;
                q.push(other);
            }
        }
    }

    sd.s = total;
    sd.chi = sd.s - sd.c;
    int pieces_total = pieces + d.circles();
    sd.genus = (2 * pieces_total - sd.chi - d.num_components()) / 2;
    sd.sl = -sd.s + d.writhe();
    return sd;
}

// ---------------------------------------------------------------------------
// Crossing equivalence and goodness

struct CrossingClasses {
    std::vector<std::vector<int>> classes;  // crossings joining the same pair of circles
    std::vector<int> class_of;
    std::vector<char> good;                 // negative crossing alone in its class
};

inline CrossingClasses classify_crossings(const SeifertData& sd) {
    CrossingClasses cc;
    std::map<std::pair<int, int>, int> id;
    cc.class_of.assign(sd.edges.size(), -1);
    for (const auto& e : sd.edges) {
        auto key = std::minmax(e.left, e.right);
        auto [it, fresh] = id.try_emplace({key.first, key.second}, static_cast<int>(cc.classes.size()));
        if (fresh) cc.classes.emplace_back();
        cc.classes[it->second].push_back(e.crossing);
        cc.class_of[e.crossing] = it->second;
    }
    cc.good.assign(sd.edges.size(), 0);
    for (const auto& e : sd.edges)
        cc.good[e.crossing] = e.sign < 0 && cc.classes[cc.class_of[e.crossing]].size() == 1;
    return cc;
}

// ---------------------------------------------------------------------------
// Checkerboard colouring

enum class Color { White = 0, Black = 1 };
enum class Surface { Black, White };

struct Checkerboard {
    std::vector<Color> color;              // per face
    int outer_face = -1;
    std::vector<char> type_a;              // per crossing: a (true) or b
    std::vector<char> type_I;              // per crossing: I (true) or II
    int c_Ia = 0, c_Ib = 0, c_IIa = 0, c_IIb = 0;
    std::vector<int> alpha, beta;          // per face: corners of type a and of type b
    std::vector<std::array<int, 2>> white_at, black_at;  // faces at each crossing

    int count(Color c) const { return static_cast<int>(std::count(color.begin(), color.end(), c)); }
};

inline Checkerboard checkerboard(const Diagram& d, int outer_face = -1) {
    if (!d.is_connected()) fail(Errc::DisconnectedDiagram, "checkerboard colouring needs a connected diagram");
    Checkerboard cb;
    const Faces& F = d.faces();
    if (d.num_crossings() == 0) return cb;
    cb.outer_face = outer_face >= 0 && outer_face < F.count() ? outer_face : detail::largest_face(d, 0);
    std::vector<int> col(F.count(), -1);
    std::vector<std::vector<int>> adj(F.count());
    for (int a = 0; a < d.num_arcs(); ++a) {
        adj[F.left(a)].push_back(F.right(a));
        adj[F.right(a)].push_back(F.left(a));
    }
    std::queue<int> q;
    col[cb.outer_face] = 0;
    q.push(cb.outer_face);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        for (int g : adj[f]) {
            if (col[g] < 0) {
                col[g] = 1 - col[f];
                q.push(g);
            } else if (col[g] == col[f]) {
                fail(Errc::Internal, "faces do not admit a checkerboard colouring");
            }
        }
    }
    for (int c : col) cb.color.push_back(c == 1 ? Color::Black : Color::White);

    int nx = d.num_crossings();
    cb.type_a.assign(nx, 0);
    cb.type_I.assign(nx, 0);
    cb.alpha.assign(F.count(), 0);
    cb.beta.assign(F.count(), 0);
    for (int x = 0; x < nx; ++x) {
        const Crossing& c = d.crossing(x);
        bool a = cb.color[detail::sector_face(d, x, 1)] == Color::Black;
        bool one = cb.color[detail::sector_face(d, x, detail::we_sectors(c)[0])] == Color::Black;
        cb.type_a[x] = a;
        cb.type_I[x] = one;
        (one ? (a ? cb.c_Ia : cb.c_Ib) : (a ? cb.c_IIa : cb.c_IIb)) += 1;
        std::array<int, 2> w{-1, -1}, b{-1, -1};
        int nw = 0, nb = 0;
        for (int j = 0; j < 4; ++j) {
            int f = detail::sector_face(d, x, j);
            (a ? cb.alpha : cb.beta)[f] += 1;
            if (cb.color[f] == Color::White) {
                w[nw++] = f;
            } else {
                b[nb++] = f;
            }
        }
        cb.white_at.push_back(w);
        cb.black_at.push_back(b);
    }
    return cb;
}

struct GoeritzForm {
    IntMatrix matrix;
    std::vector<int> regions;  // faces indexing the rows
    Surface surface = Surface::Black;
    int correction = 0;        // half the Gordon-Litherland correction term
};

// Gordon-Litherland form of the black (or white) checkerboard surface in
// the basis given by the regions of the other colour, one region dropped.
inline GoeritzForm goeritz(const Checkerboard& cb, Surface surface) {
    Color other = surface == Surface::Black ? Color::White : Color::Black;
    std::vector<int> faces;
    for (int f = 0; f < static_cast<int>(cb.color.size()); ++f)
        if (cb.color[f] == other) faces.push_back(f);
    if (faces.empty()) fail(Errc::TooFewRegions, "no regions of the opposite colour");
    int drop = other == Color::White ? cb.outer_face : faces[0];
    GoeritzForm g;
    g.surface = surface;
    std::map<int, int> row;
    for (int f : faces)
        if (f != drop) {
            row[f] = static_cast<int>(g.regions.size());
            g.regions.push_back(f);
        }
    int n = static_cast<int>(g.regions.size());
    g.matrix = zero_matrix(n, n);
    for (size_t x = 0; x < cb.type_a.size(); ++x) {
        int eta = cb.type_a[x] ? 1 : -1;
        if (surface == Surface::White) eta = -eta;
        const auto& fs = surface == Surface::Black ? cb.white_at[x] : cb.black_at[x];
        int r = fs[0], s = fs[1];
        if (r == s) continue;
        auto ir = row.find(r), is = row.find(s);
        if (ir != row.end()) g.matrix[ir->second][ir->second] += eta;
        if (is != row.end()) g.matrix[is->second][is->second] += eta;
        if (ir != row.end() && is != row.end()) {
            g.matrix[ir->second][is->second] -= eta;
            g.matrix[is->second][ir->second] -= eta;
        }
    }
    g.correction = surface == Surface::Black ? cb.c_IIb - cb.c_IIa : cb.c_Ia - cb.c_Ib;
    return g;
}

}  // namespace knotpos
