#pragma once

// Skein-theoretic link polynomials.
//
// Conventions:
//   HOMFLY     v^{-1} P(L+) - v P(L-) = z P(L0),  P(unknot) = 1
//   Conway     grad(L+) - grad(L-) = z grad(L0),   grad = P(1, z)
//   Jones      V(t) = P(t, t^{1/2} - t^{-1/2})
//   Alexander  Delta(t) = grad(t^{1/2} - t^{-1/2})
//   Dubrovnik  D(curl of writhe +1) = a^{-1} D(arc) on the regular-isotopy
//              level; the unoriented four-term relation is the usual one.

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "diagram.hpp"
#include "laurent.hpp"

namespace knotpos {

using Poly1 = LaurentPoly1;
using Poly2 = LaurentPoly2;

constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Exact division of Laurent polynomials; throws Internal when the divisor
// does not divide.
inline Poly1 exact_divide(Poly1 num, const Poly1& den) {
    if (den.is_zero()) fail(Errc::Internal, "division by zero polynomial");
    Poly1 q(num.var());
    if (num.is_zero()) return q;
    int dmax = den.max_deg_half();
    int qmin = num.min_deg_half() - den.min_deg_half();
    Int dlead = den.leading_coeff();
    while (!num.is_zero()) {
        int e = num.max_deg_half() - dmax;
        Int c = num.leading_coeff();
        if (e < qmin || c % dlead != 0) fail(Errc::Internal, "inexact polynomial division");
        Poly1 t = Poly1::monomial_half(c / dlead, e, num.var());
        q += t;
        num -= t * den;
    }
    return q;
}

// Substitutes a one-variable value for y in p(x, y) where p may contain
// negative powers of y; the result is p evaluated exactly, obtained by
// clearing y-denominators and dividing back.  `xmap` maps x^i.
inline Poly1 substitute_y(const Poly2& p, const std::function<Poly1(int)>& xmap, const Poly1& y) {
    if (p.is_zero()) return Poly1(y.var());
    int k = std::max(0, -p.min_y());
    Poly1 acc(y.var());
    std::map<int, Poly1> ypow;
    for (const auto& [key, c] : p.terms()) {
        int j = key.second + k;
        auto it = ypow.find(j);
        if (it == ypow.end()) it = ypow.emplace(j, y.pow(static_cast<unsigned>(j))).first;
        acc += xmap(key.first) * it->second * c;
    }
    if (k == 0) return acc;
    return exact_divide(acc, y.pow(static_cast<unsigned>(k)));
}

// ---------------------------------------------------------------------------
// Generic skein evaluator

struct SkeinStats {
    std::uint64_t nodes = 0;
    std::uint64_t memo_hits = 0;
};

template <class Value>
class SkeinMemo {
public:
    bool get(const std::string& k, Value& out) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void put(const std::string& k, const Value& v) {
        std::lock_guard<std::mutex> lock(mu_);
        map_.try_emplace(k, v);
    }
    size_t size() {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.size();
    }

private:
    std::mutex mu_;
    std::unordered_map<std::string, Value> map_;
};

// First crossing met as an underpass before its overpass when walking the
// components in order from their basepoints; -1 if the diagram is descending.
inline int first_nondescending_crossing(const Diagram& d) {
    std::vector<char> seen(d.num_crossings(), 0);
    for (int k = 0; k < d.num_arc_components(); ++k) {
        int a = d.comp_begin(k);
        do {
            int h = d.head(a);
            if (!seen[h]) {
                if (!d.head_over(a)) return h;
                seen[h] = 1;
            }
            a = d.next_arc(a);
        } while (a != d.comp_begin(k));
    }
    return -1;
}

// Rules supplies:
//   Value unlink(int m)                  value of the m-component unlink
//   Value delta()                        split-union factor
//   Value resolve(const Diagram&, int c, Eval&&)   recursion at crossing c
template <class Value, class Rules>
class SkeinEvaluator {
public:
    SkeinEvaluator(Rules rules, std::uint64_t budget, SkeinMemo<Value>* memo = nullptr)
        : rules_(std::move(rules)), budget_(budget), memo_(memo ? memo : &own_) {}

    Value operator()(const Diagram& input) { return eval(input); }
    const SkeinStats& stats() const { return stats_; }

    Value eval(const Diagram& input) {
        Diagram d = simplify(input);
        if (d.num_crossings() == 0) return rules_.unlink(d.circles());
        int pieces = d.num_pieces() + d.circles();
        if (pieces > 1) {
            Value r = rules_.unlink(1);
            for (const auto& p : split_pieces(d)) r = r * eval(p);
            return r * pow(rules_.delta(), pieces - 1);
        }
        std::string key = canonical_key(d);
        Value cached;
        if (memo_->get(key, cached)) {
            ++stats_.memo_hits;
            return cached;
        }
        if (++stats_.nodes > budget_) fail(Errc::ResourceLimit, "skein node budget exhausted");
        int c = first_nondescending_crossing(d);
        Value v = c < 0 ? rules_.unlink(d.num_components())
                        : rules_.resolve(d, c, [this](const Diagram& e) { return eval(e); });
        memo_->put(key, v);
        return v;
    }

private:
    static Value pow(const Value& b, int n) {
        Value r = b;
        for (int i = 1; i < n; ++i) r = r * b;
        return r;
    }

    Rules rules_;
    std::uint64_t budget_;
    SkeinMemo<Value> own_;
    SkeinMemo<Value>* memo_;
    SkeinStats stats_;
};

// ---------------------------------------------------------------------------
// HOMFLY

struct HomflyRules {
    Poly2 delta() const {
        // (v^{-1} - v) / z
        Poly2 r('v', 'z');
        r.add_term(-1, -1, 1);
        r.add_term(1, -1, -1);
        return r;
    }
    Poly2 unlink(int m) const {
        Poly2 r(Int(1), 'v', 'z');
        for (int i = 1; i < m; ++i) r *= delta();
        return r;
    }
    template <class Eval>
    Poly2 resolve(const Diagram& d, int c, Eval&& eval) const {
        Poly2 sw = eval(crossing_change(d, c));
        Poly2 sm = eval(smooth(d, c));
        if (d.crossing(c).sign > 0) return sw.shifted(2, 0) + sm.shifted(1, 1);
        return sw.shifted(-2, 0) - sm.shifted(-1, 1);
    }
};

inline Poly2 homfly(const Diagram& d, std::uint64_t budget = kDefaultBudget, SkeinMemo<Poly2>* memo = nullptr) {
    SkeinEvaluator<Poly2, HomflyRules> ev(HomflyRules{}, budget, memo);
    return ev(d);
}

// ---------------------------------------------------------------------------
// Conway, by its own recursion

struct ConwayRules {
    Poly1 delta() const { return Poly1('z'); }
    Poly1 unlink(int m) const { return m == 1 ? Poly1(Int(1), 'z') : Poly1('z'); }
    template <class Eval>
    Poly1 resolve(const Diagram& d, int c, Eval&& eval) const {
        Poly1 sw = eval(crossing_change(d, c));
        Poly1 sm = eval(smooth(d, c));
        Poly1 zsm = sm.shifted_half(2);
        return d.crossing(c).sign > 0 ? sw + zsm : sw - zsm;
    }
};

inline Poly1 conway(const Diagram& d, std::uint64_t budget = kDefaultBudget, SkeinMemo<Poly1>* memo = nullptr) {
    SkeinEvaluator<Poly1, ConwayRules> ev(ConwayRules{}, budget, memo);
    return ev(d);
}

// ---------------------------------------------------------------------------
// Dubrovnik

namespace detail {

// Standard normalization: curl of writhe +1 multiplies by a.  The public
// dubrovnik() converts with a -> a^{-1}.
struct DubrovnikStdRules {
    Poly2 delta() const {
        Poly2 r(Int(1), 'a', 'z');
        r.add_term(1, -1, 1);
        r.add_term(-1, -1, -1);
        return r;
    }
    Poly2 unlink(int m) const {
        Poly2 r(Int(1), 'a', 'z');
        for (int i = 1; i < m; ++i) r *= delta();
        return r;
    }
    template <class Eval>
    Poly2 resolve(const Diagram& d, int c, Eval&& eval) const {
        int e = d.crossing(c).sign;
        Poly2 sw = eval(crossing_change(d, c));
        Poly2 sm = eval(smooth(d, c));
        Diagram inf = smooth_unoriented(d, c);
        Poly2 si = eval(inf);
        int dw = inf.writhe() - d.writhe();
        Poly2 inner = sm.shifted(-e, 0) - si.shifted(dw, 0);
        Poly2 r = sw.shifted(-2 * e, 0);
        inner = inner.shifted(0, 1);
        return e > 0 ? r + inner : r - inner;
    }
};

}  // namespace detail

inline Poly2 dubrovnik(const Diagram& d, std::uint64_t budget = kDefaultBudget, SkeinMemo<Poly2>* memo = nullptr) {
    SkeinEvaluator<Poly2, detail::DubrovnikStdRules> ev(detail::DubrovnikStdRules{}, budget, memo);
    return ev(d).x_inverted();
}

// ---------------------------------------------------------------------------
// Substitutions

inline Poly1 conway_from_homfly(const Poly2& p) {
    Poly1 r('z');
    for (const auto& [k, c] : p.terms()) r.add_term(k.second, c);
    return r;
}

// t^{1/2} - t^{-1/2} in variable `var`.
inline Poly1 half_difference(char var) {
    Poly1 r(var);
    r.add_term_half(1, 1);
    r.add_term_half(-1, -1);
    return r;
}

inline Poly1 jones_from_homfly(const Poly2& p) {
    return substitute_y(p, [](int i) { return Poly1::monomial(1, i, 't'); }, half_difference('t'));
}

// P(v, v^{-1} - v), which is 1 for every link.
inline Poly1 homfly_at_unit(const Poly2& p) {
    Poly1 y('v');
    y.add_term(-1, 1);
    y.add_term(1, -1);
    return substitute_y(p, [](int i) { return Poly1::monomial(1, i, 'v'); }, y);
}

inline Poly1 alexander_from_conway(const Poly1& n) {
    Poly1 r('t');
    Poly1 h = half_difference('t');
    for (const auto& [e2, c] : n.terms()) {
        if (e2 % 2 != 0 || e2 < 0) fail(Errc::Internal, "Conway polynomial must have nonnegative integral exponents");
        r += h.pow(static_cast<unsigned>(e2 / 2)) * c;
    }
    return r;
}

// P of the mirror image, from P of the link.
inline Poly2 homfly_mirror(const Poly2& p, int components) {
    Poly2 r = p.x_inverted();
    if ((components - 1) % 2 != 0) r = -r;
    return r;
}

// Gaussian integer value of a polynomial in z at z = 2i.
inline std::pair<Int, Int> eval_at_2i(const Poly1& n) {
    Int re = 0, im = 0;
    for (const auto& [e2, c] : n.terms()) {
        int e = e2 / 2;
        if (e2 % 2 != 0 || e < 0) fail(Errc::Internal, "evaluation requires a polynomial");
        Int mag = c * boost::multiprecision::pow(Int(2), static_cast<unsigned>(e));
        switch (e % 4) {
            case 0: re += mag; break;
            case 1: im += mag; break;
            case 2: re -= mag; break;
            case 3: im -= mag; break;
        }
    }
    return {re, im};
}

inline Int determinant_from_conway(const Poly1& n) {
    auto [re, im] = eval_at_2i(n);
    Int sq = re * re + im * im;
    return boost::multiprecision::sqrt(sq);
}

// ---------------------------------------------------------------------------
// Kauffman bracket route to the Jones polynomial

inline Poly1 jones_bracket(const Diagram& d, std::uint64_t budget = kDefaultBudget) {
    int c = d.num_crossings();
    if (c >= 40 || (std::uint64_t(1) << c) > budget) fail(Errc::ResourceLimit, "bracket state sum exceeds budget");
    // loops -> coefficient polynomial in A, grouped by (#A - #B).
    std::map<std::pair<int, int>, Int> counts;  // (aminusb, loops) -> states
    int n = d.num_arcs();
    std::vector<std::array<int, 4>> slots;
    for (const auto& x : d.crossings()) slots.push_back(x.slots());
    for (std::uint64_t s = 0; s < (std::uint64_t(1) << c); ++s) {
        UnionFind uf(n);
        int amb = 0;
        for (int i = 0; i < c; ++i) {
            const auto& q = slots[i];
            if (s >> i & 1u) {
                uf.unite(q[1], q[2]);
                uf.unite(q[3], q[0]);
                --amb;
            } else {
                uf.unite(q[0], q[1]);
                uf.unite(q[2], q[3]);
                ++amb;
            }
        }
        int loops = 0;
        for (int a = 0; a < n; ++a)
            if (uf.find(a) == a) ++loops;
        counts[{amb, loops + d.circles()}] += 1;
    }
    Poly1 loopf('A');  // -A^2 - A^{-2}
    loopf.add_term(2, -1);
    loopf.add_term(-2, -1);
    Poly1 br('A');
    for (const auto& [k, cnt] : counts) br += Poly1::monomial(cnt, k.first, 'A') * loopf.pow(k.second - 1);
    int w = d.writhe();
    Poly1 norm = Poly1::monomial(w % 2 == 0 ? 1 : -1, -3 * w, 'A');
    Poly1 a = br * norm;
    Poly1 v('t');
    for (const auto& [e2, coef] : a.terms()) {
        int e = e2 / 2;  // A-exponent
        if (e % 2 != 0) fail(Errc::Internal, "odd A-exponent in normalized bracket");
        v.add_term_half(-e / 2, coef);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Coefficient accessors

inline Int conway_coeff(const Poly1& n, int i) { return n.coeff(i); }
inline Int homfly_coeff(const Poly2& p, int i, int j) { return p.coeff(i, j); }
// Coefficient of z^n as a polynomial in v.
inline Poly1 homfly_row(const Poly2& p, int n) { return p.y_row(n); }
inline Int mcf(const Poly1& n) { return n.is_zero() ? Int(0) : n.leading_coeff(); }

}  // namespace knotpos
