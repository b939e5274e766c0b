#pragma once

// Signature-type invariants: Seifert matrices of the canonical surface,
// the Gordon-Litherland signature, Levine-Tristram signatures at roots of
// unity, the determinant, and consistency checks against the Conway
// polynomial.

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "polynomials.hpp"
#include "positivity.hpp"
#include "seifert.hpp"

namespace knotpos {

struct SeifertMatrix {
    IntMatrix a;
    // Each basis curve as the crossings (bands) it runs through, in order.
    std::vector<std::vector<int>> basis;
    int size() const { return static_cast<int>(a.size()); }
};

namespace detail {

struct CycleCurve {
    std::vector<int> circles;   // circle visited at step t
    std::vector<int> bands;     // band from circles[t] to circles[t+1]
};

struct CurveOnCircle {
    int in_band = -1, out_band = -1;
    int step = -1;
};

class SeifertLinker {
public:
    SeifertLinker(const Diagram& d, const SeifertData& sd) : d_(d), sd_(sd) {
        region_of_crossing_.resize(d.num_crossings());
        for (int x = 0; x < d.num_crossings(); ++x)
            region_of_crossing_[x] = sd.region_of_face[sector_face(d, x, ns_sectors(d.crossing(x))[0])];
    }

    // Twice the linking number of curve a (lane -1) with the push-off of
    // curve b (lane +1).
    int lk2(const CycleCurve& a, const CycleCurve& b) const {
        int total = 0;
        std::map<int, int> band_a;
        for (size_t t = 0; t < a.bands.size(); ++t) band_a[a.bands[t]] = direction(a, t);
        for (size_t t = 0; t < b.bands.size(); ++t) {
            auto it = band_a.find(b.bands[t]);
            if (it == band_a.end()) continue;
            int x = b.bands[t];
            total -= d_.crossing(x).sign * it->second * direction(b, t);
        }
        std::map<int, CurveOnCircle> on_a = visits(a), on_b = visits(b);
        for (const auto& [circle, va] : on_a) {
            auto jt = on_b.find(circle);
            if (jt == on_b.end()) continue;
            const CurveOnCircle& vb = jt->second;
            int n = 4 * static_cast<int>(sd_.circles[circle].size());
            int a_in = pos(-1, circle, va.in_band), a_out = pos(-1, circle, va.out_band);
            int b_in = pos(1, circle, vb.in_band), b_out = pos(1, circle, vb.out_band);
            auto inside = [n](int q, int e, int f) {
                int d1 = ((q - e) % n + n) % n, d2 = ((f - e) % n + n) % n;
                return d1 > 0 && d1 < d2;
            };
            if (inside(b_in, a_in, a_out)) total -= 1;
            if (inside(b_out, a_in, a_out)) total += 1;
            int orient = sd_.ccw[circle] ? 1 : -1;
            auto child_side = [&](int x) { return region_of_crossing_[x] == sd_.inner_region[circle]; };
            if (child_side(va.in_band) && inside(a_in, b_in, b_out)) total += orient;
            if (child_side(va.out_band) && inside(a_out, b_in, b_out)) total -= orient;
            if (child_side(vb.in_band) && inside(b_in, a_in, a_out)) total += orient;
            if (child_side(vb.out_band) && inside(b_out, a_in, a_out)) total -= orient;
        }
        return total;
    }

private:
    int direction(const CycleCurve& c, size_t t) const {
        return sd_.edges[c.bands[t]].left == c.circles[t] ? 1 : -1;
    }
    static std::map<int, CurveOnCircle> visits(const CycleCurve& c) {
        std::map<int, CurveOnCircle> out;
        size_t k = c.circles.size();
        for (size_t t = 0; t < k; ++t) {
            CurveOnCircle v;
            v.step = static_cast<int>(t);
            v.in_band = c.bands[(t + k - 1) % k];
            v.out_band = c.bands[t];
            out[c.circles[t]] = v;
        }
        return out;
    }
    // Position (scaled by 4) along `circle` where a curve on `lane` meets
    // the band of crossing x.
    int pos(int lane, int circle, int x) const {
        const Crossing& c = d_.crossing(x);
        int arc = sd_.circle_of_arc[c.ui] == circle ? c.ui : c.oi;
        int side = sd_.edges[x].left == circle ? 1 : -1;
        return 4 * sd_.index_on_circle[arc] + 2 + lane * side;
    }

    const Diagram& d_;
    const SeifertData& sd_;
    std::vector<int> region_of_crossing_;
};

}  // namespace detail

// Seifert matrix A_ij = -lk(alpha_i, alpha_j^+) of the canonical Seifert
// surface, in the basis of fundamental cycles of a spanning tree of the
// Seifert graph.
inline SeifertMatrix seifert_matrix(const Diagram& d, int outer_face = -1) {
    if (!d.is_connected()) fail(Errc::DisconnectedDiagram, "Seifert matrix needs a connected diagram");
    SeifertMatrix out;
    if (d.num_crossings() == 0) return out;
    SeifertData sd = seifert_data(d, outer_face);
    int nc = sd.num_circles();
    std::vector<std::vector<std::pair<int, int>>> adj(nc);  // (neighbour, crossing)
    for (const auto& e : sd.edges) {
        adj[e.left].push_back({e.right, e.crossing});
        adj[e.right].push_back({e.left, e.crossing});
    }
    std::vector<int> par(nc, -1), par_edge(nc, -1), depth(nc, 0);
    std::vector<char> in_tree(sd.edges.size(), 0), seen(nc, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, x] : adj[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            par[v] = u;
            par_edge[v] = x;
            depth[v] = depth[u] + 1;
            in_tree[x] = 1;
            q.push(v);
        }
    }
    std::vector<detail::CycleCurve> curves;
    for (const auto& e : sd.edges) {
        if (in_tree[e.crossing]) continue;
        detail::CycleCurve cc;
        // Cross the band from left to right, then return along the tree.
        int u = e.left, v = e.right;
        std::vector<int> up_v, up_u;  // vertices climbing from v and from u
        std::vector<int> up_v_edges, up_u_edges;
        int a = v, b = u;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                up_v.push_back(a);
                up_v_edges.push_back(par_edge[a]);
                a = par[a];
            } else {
                up_u.push_back(b);
                up_u_edges.push_back(par_edge[b]);
                b = par[b];
            }
        }
        int lca = a;
        cc.circles.push_back(u);
        cc.bands.push_back(e.crossing);
        for (size_t i = 0; i < up_v.size(); ++i) {
            cc.circles.push_back(up_v[i]);
            cc.bands.push_back(up_v_edges[i]);
        }
        // Now at lca, descend towards u.
        if (lca != u) {
            cc.circles.push_back(lca);
            for (size_t i = up_u.size(); i-- > 0;) {
                cc.bands.push_back(up_u_edges[i]);
                if (i > 0) cc.circles.push_back(up_u[i]);
            }
        }
        curves.push_back(cc);
        out.basis.push_back(cc.bands);
    }
    detail::SeifertLinker linker(d, sd);
    int m = static_cast<int>(curves.size());
    out.a = zero_matrix(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int l2 = linker.lk2(curves[i], curves[j]);
            if (l2 % 2 != 0) fail(Errc::Internal, "non-integral linking number in Seifert matrix");
            out.a[i][j] = -l2 / 2;
        }
    return out;
}

inline IntMatrix symmetrized(const SeifertMatrix& s) { return add(s.a, transpose(s.a)); }

// ---------------------------------------------------------------------------
// Signature

// Gordon-Litherland signature of a connected diagram.
inline int signature_connected(const Diagram& d) {
    if (!d.is_connected()) fail(Errc::DisconnectedDiagram, "signature needs a connected diagram");
    if (d.num_crossings() == 0) return 0;
    Checkerboard cb = checkerboard(d);
    Surface s = cb.count(Color::White) >= 2 ? Surface::Black : Surface::White;
    GoeritzForm g = goeritz(cb, s);
    return -(symmetric_signature(g.matrix) + g.correction);
}

// Signature of any diagram; split pieces contribute additively.
inline int signature(const Diagram& d) {
    if (d.is_connected()) return signature_connected(d);
    int s = 0;
    for (const auto& p : split_pieces(d)) s += signature_connected(p);
    return s;
}

inline int seifert_signature(const SeifertMatrix& s) { return symmetric_signature(symmetrized(s)); }

// ---------------------------------------------------------------------------
// Levine-Tristram signatures at omega = exp(2 pi i k / n)

namespace detail {

// Cyclotomic polynomial Phi_n with integer coefficients (ascending).
inline std::vector<Int> cyclotomic(int n) {
    std::vector<Int> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int dd = 1; dd < n; ++dd) {
        if (n % dd != 0) continue;
        auto den = cyclotomic(dd);
        // Exact division num / den.
        std::vector<Int> qt(num.size() - den.size() + 1, 0);
        std::vector<Int> r = num;
        for (int i = static_cast<int>(qt.size()) - 1; i >= 0; --i) {
            Int c = r[i + den.size() - 1] / den.back();
            qt[i] = c;
            for (size_t j = 0; j < den.size(); ++j) r[i + j] -= c * den[j];
        }
        num = qt;
    }
    return num;
}

// A rational polynomial vanishing at cot(pi k / n), built from Phi_n via
// omega = (t + i) / (t - i).
inline QPoly cot_polynomial(int n) {
    auto phi = cyclotomic(n);
    int deg = static_cast<int>(phi.size()) - 1;
    // Gaussian-rational polynomials as (re, im) pairs.
    using GP = std::pair<QPoly, QPoly>;
    auto mul = [](const GP& a, const GP& b) {
        return GP{a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first};
    };
    GP plus{QPoly::x(), QPoly::constant(1)}, minus{QPoly::x(), QPoly::constant(-1)};
    std::vector<GP> pp{GP{QPoly::constant(1), QPoly()}}, pm{GP{QPoly::constant(1), QPoly()}};
    for (int j = 1; j <= deg; ++j) {
        pp.push_back(mul(pp.back(), plus));
        pm.push_back(mul(pm.back(), minus));
    }
    GP acc{QPoly(), QPoly()};
    for (int j = 0; j <= deg; ++j) {
        if (phi[j] == 0) continue;
        GP term = mul(pp[j], pm[deg - j]);
        acc.first = acc.first + term.first * Rational(phi[j]);
        acc.second = acc.second + term.second * Rational(phi[j]);
    }
    if (acc.first.is_zero()) return acc.second;
    if (acc.second.is_zero()) return acc.first;
    return QPoly::gcd(acc.first, acc.second);
}

}  // namespace detail

// Signature of (1 - w) A + (1 - conj w) A^T with w = exp(2 pi i k / n),
// computed exactly through the real form [[S, -tK], [tK, S]] where
// S = A + A^T, K = A^T - A and t = cot(pi k / n).
inline int levine_tristram(const SeifertMatrix& s, int n, int k) {
    if (n <= 0) fail(Errc::MalformedSyntax, "root of unity order must be positive");
    k = ((k % n) + n) % n;
    if (k == 0) fail(Errc::OmegaEqualsOne, "omega must differ from 1");
    int g = std::gcd(n, k);
    n /= g;
    k /= g;
    int m = s.size();
    if (m == 0) return 0;
    IntMatrix S = symmetrized(s), K = add(transpose(s.a), s.a, -1);
    if (2 * k == n) return symmetric_signature(S);
    double approx = 1.0 / std::tan(std::numbers::pi * k / n);
    RealAlgebraic t(detail::cot_polynomial(n), approx);
    std::vector<std::vector<QPoly>> big(2 * m, std::vector<QPoly>(2 * m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            QPoly sv = QPoly::constant(Rational(S[i][j]));
            QPoly kv = QPoly::x() * Rational(K[i][j]);
            big[i][j] = sv;
            big[i + m][j + m] = sv;
            big[i][j + m] = -kv;
            big[i + m][j] = kv;
        }
    int sig = symmetric_signature(std::move(big), t);
    if (sig % 2 != 0) fail(Errc::Internal, "odd signature of a doubled Hermitian form");
    return sig / 2;
}

// ---------------------------------------------------------------------------
// Determinant and Conway consistency

inline Int determinant(const Diagram& d, std::uint64_t budget = kDefaultBudget) {
    return determinant_from_conway(conway(d, budget));
}

// Conway polynomial recovered from a Seifert matrix: det(x A - x^{-1} A^T)
// rewritten in z = x - x^{-1}.
inline Poly1 conway_from_seifert(const SeifertMatrix& s) {
    int m = s.size();
    std::vector<std::vector<Poly1>> mat(m, std::vector<Poly1>(m, Poly1('x')));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            mat[i][j] = Poly1::monomial(s.a[i][j], 1, 'x') - Poly1::monomial(s.a[j][i], -1, 'x');
    Poly1 det = bareiss_determinant<Poly1>(mat, Poly1(Int(1), 'x'), Poly1('x'),
                                           [](const Poly1& a, const Poly1& b) { return exact_divide(a, b); });
    // Peel off leading terms: x^k + (-1)^k x^{-k} is the top of z^k.
    Poly1 z = Poly1::monomial(1, 1, 'x') - Poly1::monomial(1, -1, 'x');
    Poly1 out('z');
    while (!det.is_zero()) {
        int top = det.max_deg();
        if (top < 0) fail(Errc::Internal, "Seifert determinant is not a polynomial in x - 1/x");
        Int c = det.leading_coeff();
        out.add_term(top, c);
        det -= z.pow(static_cast<unsigned>(top)) * c;
    }
    return out;
}

enum class Consistency { Consistent, Violation };

// Parity and mod-4 constraints linking the signature with the sign of
// (2i)^{1-m} grad(2i).
inline Consistency nabla_sigma_consistency(const Poly1& n, int sigma, int m) {
    auto [re, im] = eval_at_2i(n);
    if (re == 0 && im == 0) fail(Errc::VanishingDeterminant, "grad(2i) vanishes");
    // Multiply by (2i)^{1-m} = (2i)^{-(m-1)}; the result is real.  Its
    // sign equals that of conj((2i)^{m-1}) * grad(2i) = (-2i)^{m-1} grad(2i).
    Int pr = re, pi = im;
    for (int i = 0; i < m - 1; ++i) {
        Int nr = 2 * pi, ni = -2 * pr;
        pr = nr;
        pi = ni;
    }
    if (pi != 0) fail(Errc::Internal, "(2i)^{1-m} grad(2i) is not real");
    if (((sigma + m) % 2 + 2) % 2 != 1) return Consistency::Violation;
    int r = (((sigma - m) % 4) + 4) % 4;
    int want = pr > 0 ? 3 : 1;
    return r == want ? Consistency::Consistent : Consistency::Violation;
}

inline const char* consistency_name(Consistency c) {
    return c == Consistency::Consistent ? "Consistent" : "Violation";
}

// ---------------------------------------------------------------------------
// Diagrammatic lower bounds

// A crossing is nugatory when one face meets it in two opposite corners.
inline bool is_nugatory(const Diagram& d, int x) {
    using detail::sector_face;
    return sector_face(d, x, 0) == sector_face(d, x, 2) || sector_face(d, x, 1) == sector_face(d, x, 3);
}

inline bool is_reduced(const Diagram& d) {
    for (int x = 0; x < d.num_crossings(); ++x)
        if (is_nugatory(d, x)) return false;
    return true;
}

enum class BoundVariant { General, Sap };

struct SignatureBound {
    Rational value;
    BoundVariant variant = BoundVariant::General;
    int chi = 0;
    int c_minus = 0;
    int k = 0;
};

// General:  (1 - chi)/12 - 4 c_-/3 + 1/2.
// Sap:      (1 - chi)/12 - 13 k/12 + 1/3, for successively k-almost
//           positive diagrams.
inline SignatureBound signature_lower_bound(const Diagram& d, BoundVariant variant) {
    if (!d.is_connected()) fail(Errc::DisconnectedDiagram, "the bound needs a connected diagram");
    if (!is_reduced(d)) fail(Errc::NotReduced, "diagram has a nugatory crossing");
    SignatureBound b;
    b.variant = variant;
    b.chi = seifert_data(d).chi;
    b.c_minus = d.c_minus();
    Rational base = Rational(1 - b.chi, 12);
    if (variant == BoundVariant::General) {
        b.value = base - Rational(4 * b.c_minus, 3) + Rational(1, 2);
        return b;
    }
    PositivityClass pc = classify(d);
    if (!pc.is_sap()) fail(Errc::NotSAP, std::string("diagram is ") + tag_name(pc.tag));
    b.k = pc.k;
    b.value = base - Rational(13 * b.k, 12) + Rational(1, 3);
    return b;
}

}  // namespace knotpos
