#pragma once

// Exact linear algebra: integer and rational matrices, fraction-free
// determinants, signatures of symmetric forms, matrix-tree counts, and a
// small real-algebraic number type used for Levine-Tristram signatures.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace knotpos {

using Rational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix zero_matrix(int n, int m) { return IntMatrix(n, std::vector<Int>(m, 0)); }

inline IntMatrix transpose(const IntMatrix& a) {
    if (a.empty()) return {};
    IntMatrix t = zero_matrix(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline IntMatrix add(const IntMatrix& a, const IntMatrix& b, int sb = 1) {
    IntMatrix r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[i][j] += sb * b[i][j];
    return r;
}

// Bareiss elimination; works for any integral domain with exact division.
template <class T, class Div>
T bareiss_determinant(std::vector<std::vector<T>> m, const T& one, const T& zero, Div exact_div) {
    int n = static_cast<int>(m.size());
    if (n == 0) return one;
    T prev = one;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == zero) {
            int r = k + 1;
            while (r < n && m[r][k] == zero) ++r;
            if (r == n) return zero;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                T num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = exact_div(num, prev);
            }
            m[i][k] = zero;
        }
        prev = m[k][k];
    }
    T d = m[n - 1][n - 1];
    return sign > 0 ? d : zero - d;
}

inline Int determinant(const IntMatrix& m) {
    return bareiss_determinant<Int>(m, Int(1), Int(0), [](const Int& a, const Int& b) { return Int(a / b); });
}

// Signature of a symmetric rational matrix by congruence (Sylvester).
inline int symmetric_signature(std::vector<std::vector<Rational>> m) {
    int n = static_cast<int>(m.size());
    int sig = 0;
    std::vector<char> alive(n, 1);
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i = 0; i < n && piv < 0; ++i)
            if (alive[i] && m[i][i] != 0) piv = i;
        if (piv < 0) {
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i) {
                if (!alive[i]) continue;
                for (int j = 0; j < n; ++j)
                    if (alive[j] && j != i && m[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            }
            if (pi < 0) break;
            for (int k = 0; k < n; ++k) m[pi][k] += m[pj][k];
            for (int k = 0; k < n; ++k) m[k][pi] += m[k][pj];
            piv = pi;
        }
        Rational p = m[piv][piv];
        sig += p > 0 ? 1 : -1;
        alive[piv] = 0;
        for (int i = 0; i < n; ++i) {
            if (!alive[i] || m[i][piv] == 0) continue;
            Rational f = m[i][piv] / p;
            for (int j = 0; j < n; ++j)
                if (alive[j]) m[i][j] -= f * m[piv][j];
        }
        for (int i = 0; i < n; ++i) m[i][piv] = m[piv][i] = 0;
        m[piv][piv] = p;
    }
    return sig;
}

inline int symmetric_signature(const IntMatrix& a) {
    std::vector<std::vector<Rational>> m(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& x : a[i]) m[i].push_back(Rational(x));
    return symmetric_signature(std::move(m));
}

// Number of spanning trees of a multigraph given by an edge list.
inline Int spanning_tree_count(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 1) return 1;
    IntMatrix lap = zero_matrix(n, n);
    for (auto [u, v] : edges) {
        if (u == v) continue;
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    IntMatrix red = zero_matrix(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) red[i - 1][j - 1] = lap[i][j];
    return determinant(red);
}

// ---------------------------------------------------------------------------
// Polynomials with rational coefficients

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    static QPoly constant(const Rational& r) { return QPoly(std::vector<Rational>{r}); }
    static QPoly x() { return QPoly(std::vector<Rational>{0, 1}); }

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& operator[](int i) const { return c_[i]; }
    Rational lead() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a) {
        QPoly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const Rational& k) {
        QPoly r = a;
        for (auto& x : r.c_) x *= k;
        r.trim();
        return r;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

    // Quotient and remainder of a by b.
    static std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
        if (b.is_zero()) fail(Errc::Internal, "polynomial division by zero");
        std::vector<Rational> q(std::max(0, a.deg() - b.deg() + 1));
        while (!a.is_zero() && a.deg() >= b.deg()) {
            int s = a.deg() - b.deg();
            Rational f = a.lead() / b.lead();
            q[s] = f;
            for (int i = 0; i <= b.deg(); ++i) a.c_[i + s] -= f * b.c_[i];
            a.trim();
        }
        return {QPoly(std::move(q)), a};
    }
    friend QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
    friend QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

    QPoly monic() const { return is_zero() ? *this : *this * (Rational(1) / lead()); }
    QPoly derivative() const {
        std::vector<Rational> r;
        for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<int>(i));
        return QPoly(std::move(r));
    }
    Rational eval(const Rational& t) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    static QPoly gcd(QPoly a, QPoly b) {
        while (!b.is_zero()) {
            QPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
    // Returns (g, s) with s*a = g (mod m), g = gcd(a, m) monic.
    static std::pair<QPoly, QPoly> inverse_part(const QPoly& a, const QPoly& m) {
        QPoly r0 = m, r1 = a % m, s0, s1 = constant(1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            QPoly s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        Rational k = Rational(1) / r0.lead();
        return {r0 * k, s0 * k};
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Number of distinct real roots of p in the half-open interval (a, b].
inline int sturm_count(const QPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) fail(Errc::Internal, "Sturm sequence of the zero polynomial");
    std::vector<QPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = -(seq[seq.size() - 2] % seq.back());
        seq.push_back(r);
    }
    seq.pop_back();
    auto variations = [&](const Rational& t) {
        int v = 0, last = 0;
        for (const auto& q : seq) {
            Rational y = q.eval(t);
            int s = y > 0 ? 1 : (y < 0 ? -1 : 0);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    };
    return variations(a) - variations(b);
}

// A real algebraic number: the unique root of a squarefree polynomial in an
// isolating interval, or an exact rational.
class RealAlgebraic {
public:
    RealAlgebraic(QPoly m, double approx) {
        QPoly g = QPoly::gcd(m, m.derivative());
        m_ = (m / g).monic();
        if (m_.deg() < 1) fail(Errc::Internal, "constant defining polynomial");
        if (m_.deg() == 1) {
            exact_ = true;
            lo_ = hi_ = -m_[0] / m_[1];
            return;
        }
        Rational centre = to_rational(approx);
        Rational w(1, 1 << 20);
        for (int iter = 0; iter < 200; ++iter) {
            lo_ = centre - w;
            hi_ = centre + w;
            int n = sturm_count(m_, lo_, hi_);
            if (n == 1) break;
            if (n == 0) {
                w *= 4;
            } else {
                w /= 4;
            }
            if (iter == 199) fail(Errc::Internal, "cannot isolate algebraic root");
        }
        if (m_.eval(hi_) == 0) {
            exact_ = true;
            lo_ = hi_;
        }
    }

    // Sign of e(theta) for a polynomial e.
    int sign_of(QPoly e) {
        if (e.is_zero()) return 0;
        if (exact_) return sgn(e.eval(lo_));
        e = e % m_;
        if (e.is_zero()) return 0;
        QPoly g = QPoly::gcd(e, m_);
        if (g.deg() > 0 && sturm_count(g, lo_, hi_) > 0) return 0;
        while (sturm_count(e, lo_, hi_) > 0 || e.eval(lo_) == 0) bisect();
        return sgn(e.eval(hi_));
    }
    bool is_zero(const QPoly& e) { return sign_of(e) == 0; }

    // Inverse of a nonzero element modulo the defining polynomial; the
    // defining polynomial shrinks to a factor when a common factor is found.
    QPoly inverse(const QPoly& e) {
        while (true) {
            auto [g, s] = QPoly::inverse_part(e, m_);
            if (g.deg() == 0) return s % m_;
            QPoly other = m_ / g;
            if (sturm_count(g, lo_, hi_) > 0) fail(Errc::Internal, "inverse of zero element");
            m_ = other.monic();
            if (m_.deg() == 1) {
                exact_ = true;
                lo_ = hi_ = -m_[0] / m_[1];
            }
        }
    }
    QPoly reduce(const QPoly& e) const { return exact_ ? QPoly::constant(e.eval(lo_)) : e % m_; }
    const QPoly& modulus() const { return m_; }
    bool exact() const { return exact_; }

private:
    static int sgn(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }
    static Rational to_rational(double x) {
        const double scale = 1048576.0 * 1048576.0;
        long long n = std::llround(x * scale);
        return Rational(Int(n), Int(1) << 40);
    }
    void bisect() {
        Rational mid = (lo_ + hi_) / 2;
        Rational y = m_.eval(mid);
        if (y == 0) {
            exact_ = true;
            lo_ = hi_ = mid;
            return;
        }
        if (sturm_count(m_, lo_, mid) == 1) {
            hi_ = mid;
        } else {
            lo_ = mid;
        }
    }

    QPoly m_;
    Rational lo_, hi_;
    bool exact_ = false;
};

// Signature of a symmetric matrix with entries in Q(theta), theta given as
// a real algebraic number; entries are polynomials in theta.
inline int symmetric_signature(std::vector<std::vector<QPoly>> m, RealAlgebraic& theta) {
    int n = static_cast<int>(m.size());
    for (auto& row : m)
        for (auto& e : row) e = theta.reduce(e);
    int sig = 0;
    std::vector<char> alive(n, 1);
    auto nz = [&](const QPoly& e) { return !theta.is_zero(e); };
    for (int step = 0; step < n; ++step) {
        int piv = -1;
        for (int i = 0; i < n && piv < 0; ++i)
            if (alive[i] && nz(m[i][i])) piv = i;
        if (piv < 0) {
            int pi = -1, pj = -1;
            for (int i = 0; i < n && pi < 0; ++i) {
                if (!alive[i]) continue;
                for (int j = 0; j < n; ++j)
                    if (alive[j] && j != i && nz(m[i][j])) {
                        pi = i;
                        pj = j;
                        break;
                    }
            }
            if (pi < 0) break;
            for (int k = 0; k < n; ++k) m[pi][k] = m[pi][k] + m[pj][k];
            for (int k = 0; k < n; ++k) m[k][pi] = theta.reduce(m[k][pi] + m[k][pj]);
            for (int k = 0; k < n; ++k) m[pi][k] = theta.reduce(m[pi][k]);
            piv = pi;
        }
        QPoly p = m[piv][piv];
        sig += theta.sign_of(p);
        alive[piv] = 0;
        QPoly inv = theta.inverse(p);
        for (int i = 0; i < n; ++i) {
            if (!alive[i] || !nz(m[i][piv])) continue;
            QPoly f = theta.reduce(m[i][piv] * inv);
            for (int j = 0; j < n; ++j)
                if (alive[j]) m[i][j] = theta.reduce(m[i][j] - f * m[piv][j]);
        }
        for (int i = 0; i < n; ++i)
            if (i != piv) m[i][piv] = m[piv][i] = QPoly();
    }
    return sig;
}

}  // namespace knotpos
