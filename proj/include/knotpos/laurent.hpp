#pragma once

// Sparse Laurent polynomials over arbitrary-precision integers.
//
// LaurentPoly1 keys every term by twice its exponent, so t^{1/2} is stored
// under key 1 and z^3 under key 6.  LaurentPoly2 keys terms by the integer
// pair (i, j) for x^i y^j.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "errors.hpp"

namespace knotpos {

using Int = boost::multiprecision::cpp_int;

namespace detail {

inline std::string exp_text(int e2) {
    if (e2 % 2 == 0) return std::to_string(e2 / 2);
    return "(" + std::to_string(e2) + "/2)";
}

// Appends one signed term to `out`, following the canonical layout
// "c*x^i*y^j" with unit coefficients and zero exponents suppressed.
inline void append_term(std::string& out, const Int& c, const std::string& mono) {
    bool neg = c < 0;
    Int mag = neg ? Int(-c) : c;
    if (out.empty()) {
        if (neg) out += "-";
    } else {
        out += neg ? " - " : " + ";
    }
    if (mono.empty()) {
        out += mag.str();
    } else if (mag == 1) {
        out += mono;
    } else {
        out += mag.str() + "*" + mono;
    }
}

inline std::string factor(char var, int e2) {
    if (e2 == 0) return {};
    std::string s(1, var);
    if (e2 != 2) s += "^" + exp_text(e2);
    return s;
}

struct TermParser {
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
    [[noreturn]] void bad() const {
        fail(Errc::MalformedSyntax, "cannot parse polynomial '" + s + "' at offset " + std::to_string(pos));
    }
    int integer() {
        skip();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) bad();
        int v = std::stoi(s.substr(start, pos - start));
        return neg ? -v : v;
    }
    // Returns twice the exponent.
    int exponent() {
        skip();
        if (pos < s.size() && s[pos] == '(') {
            ++pos;
            int num = integer();
            skip();
            if (pos >= s.size() || s[pos] != '/') bad();
            ++pos;
            int den = integer();
            skip();
            if (pos >= s.size() || s[pos] != ')' || den != 2) bad();
            ++pos;
            return num;
        }
        return 2 * integer();
    }
    // Parses one term: sign handled by caller.  Fills coefficient and a map
    // from variable to doubled exponent.
    void term(Int& coef, std::map<char, int>& exps) {
        skip();
        coef = 1;
        exps.clear();
        bool need_factor = true;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            coef = Int(s.substr(start, pos - start));
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
            } else {
                need_factor = false;
            }
        }
        while (need_factor) {
            skip();
            if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) bad();
            char var = s[pos++];
            int e2 = 2;
            skip();
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                e2 = exponent();
            }
            exps[var] += e2;
            skip();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
            } else {
                need_factor = false;
            }
        }
    }
    // Sign before a term: leading '-' or a '+'/'-' separator.
    int sign(bool first) {
        skip();
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) return s[pos++] == '-' ? -1 : 1;
        if (!first) bad();
        return 1;
    }
};

}  // namespace detail

class LaurentPoly1 {
public:
    LaurentPoly1() = default;
    explicit LaurentPoly1(char var) : var_(var) {}
    LaurentPoly1(const Int& c, char var = 'z') : var_(var) {
        if (c != 0) terms_[0] = c;
    }

    static LaurentPoly1 monomial(const Int& c, int exp, char var = 'z') {
        return monomial_half(c, 2 * exp, var);
    }
    static LaurentPoly1 monomial_half(const Int& c, int exp2, char var = 'z') {
        LaurentPoly1 p(var);
        if (c != 0) p.terms_[exp2] = c;
        return p;
    }

    char var() const { return var_; }
    void set_var(char v) { var_ = v; }
    const std::map<int, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }
    size_t size() const { return terms_.size(); }

    Int coeff(int exp) const { return coeff_half(2 * exp); }
    Int coeff_half(int exp2) const {
        auto it = terms_.find(exp2);
        return it == terms_.end() ? Int(0) : it->second;
    }
    void add_term_half(int exp2, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(exp2, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add_term(int exp, const Int& c) { add_term_half(2 * exp, c); }

    // Degrees as doubled exponents; callers must not query the zero polynomial.
    int min_deg_half() const { return terms_.begin()->first; }
    int max_deg_half() const { return terms_.rbegin()->first; }
    int min_deg() const { return floor_half(min_deg_half()); }
    int max_deg() const { return floor_half(max_deg_half()); }
    Int lowest_coeff() const { return terms_.begin()->second; }
    Int leading_coeff() const { return terms_.rbegin()->second; }
    bool has_half_exponents() const {
        return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first % 2 != 0; });
    }

    LaurentPoly1& operator+=(const LaurentPoly1& o) {
        for (const auto& [e, c] : o.terms_) add_term_half(e, c);
        return *this;
    }
    LaurentPoly1& operator-=(const LaurentPoly1& o) {
        for (const auto& [e, c] : o.terms_) add_term_half(e, -c);
        return *this;
    }
    friend LaurentPoly1 operator+(LaurentPoly1 a, const LaurentPoly1& b) { return a += b; }
    friend LaurentPoly1 operator-(LaurentPoly1 a, const LaurentPoly1& b) { return a -= b; }
    friend LaurentPoly1 operator-(LaurentPoly1 a) {
        for (auto& kv : a.terms_) kv.second = -kv.second;
        return a;
    }
    friend LaurentPoly1 operator*(const LaurentPoly1& a, const LaurentPoly1& b) {
        LaurentPoly1 r(a.var_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term_half(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly1& operator*=(const LaurentPoly1& o) { return *this = *this * o; }
    friend LaurentPoly1 operator*(LaurentPoly1 a, const Int& k) {
        if (k == 0) return LaurentPoly1(a.var_);
        for (auto& kv : a.terms_) kv.second *= k;
        return a;
    }
    friend bool operator==(const LaurentPoly1& a, const LaurentPoly1& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly1& a, const LaurentPoly1& b) { return !(a == b); }

    // Multiplies by var^{exp2/2}.
    LaurentPoly1 shifted_half(int exp2) const {
        LaurentPoly1 r(var_);
        for (const auto& [e, c] : terms_) r.terms_[e + exp2] = c;
        return r;
    }
    LaurentPoly1 pow(unsigned n) const {
        LaurentPoly1 r(Int(1), var_), b = *this;
        while (n) {
            if (n & 1u) r *= b;
            b *= b;
            n >>= 1u;
        }
        return r;
    }
    // p(var^{-1}).
    LaurentPoly1 inverted() const {
        LaurentPoly1 r(var_);
        for (const auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }
    // p(-var) for integral exponents.
    LaurentPoly1 negated_var() const {
        LaurentPoly1 r(var_);
        for (const auto& [e, c] : terms_) r.terms_[e] = (e / 2) % 2 == 0 ? c : Int(-c);
        return r;
    }
    Int sum_of_coeffs() const {
        Int s = 0;
        for (const auto& kv : terms_) s += kv.second;
        return s;
    }

    std::string str() const {
        std::string out;
        for (const auto& [e, c] : terms_) detail::append_term(out, c, detail::factor(var_, e));
        return out.empty() ? "0" : out;
    }

    static LaurentPoly1 parse(const std::string& text, char var) {
        LaurentPoly1 p(var);
        detail::TermParser tp{text};
        if (tp.done()) fail(Errc::MalformedSyntax, "empty polynomial");
        bool first = true;
        while (!tp.done()) {
            int sg = tp.sign(first);
            first = false;
            Int c;
            std::map<char, int> ex;
            tp.term(c, ex);
            int e2 = 0;
            for (const auto& [v, e] : ex) {
                if (v != var) fail(Errc::MalformedSyntax, std::string("unexpected variable ") + v);
                e2 += e;
            }
            p.add_term_half(e2, sg < 0 ? Int(-c) : c);
        }
        return p;
    }

private:
    static int floor_half(int e2) { return e2 >= 0 ? e2 / 2 : -((-e2 + 1) / 2); }

    std::map<int, Int> terms_;
    char var_ = 'z';
};

class LaurentPoly2 {
public:
    using Key = std::pair<int, int>;

    LaurentPoly2() = default;
    LaurentPoly2(char x, char y) : x_(x), y_(y) {}
    LaurentPoly2(const Int& c, char x, char y) : x_(x), y_(y) {
        if (c != 0) terms_[{0, 0}] = c;
    }
    static LaurentPoly2 monomial(const Int& c, int i, int j, char x = 'v', char y = 'z') {
        LaurentPoly2 p(x, y);
        if (c != 0) p.terms_[{i, j}] = c;
        return p;
    }

    char xvar() const { return x_; }
    char yvar() const { return y_; }
    const std::map<Key, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} && terms_.begin()->second == 1; }

    Int coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Int(0) : it->second;
    }
    void add_term(int i, int j, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(Key{i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Coefficient of y^j as a polynomial in x.
    LaurentPoly1 y_row(int j) const {
        LaurentPoly1 r(x_);
        for (const auto& [k, c] : terms_)
            if (k.second == j) r.add_term(k.first, c);
        return r;
    }
    // Coefficient of x^i as a polynomial in y.
    LaurentPoly1 x_row(int i) const {
        LaurentPoly1 r(y_);
        for (const auto& [k, c] : terms_)
            if (k.first == i) r.add_term(k.second, c);
        return r;
    }

    int min_x() const { return extreme([](const Key& k) { return k.first; }, false); }
    int max_x() const { return extreme([](const Key& k) { return k.first; }, true); }
    int min_y() const { return extreme([](const Key& k) { return k.second; }, false); }
    int max_y() const { return extreme([](const Key& k) { return k.second; }, true); }

    LaurentPoly2& operator+=(const LaurentPoly2& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    LaurentPoly2& operator-=(const LaurentPoly2& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
    friend LaurentPoly2 operator-(LaurentPoly2 a) {
        for (auto& kv : a.terms_) kv.second = -kv.second;
        return a;
    }
    friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
        LaurentPoly2 r(a.x_, a.y_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    LaurentPoly2& operator*=(const LaurentPoly2& o) { return *this = *this * o; }
    friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly2& a, const LaurentPoly2& b) { return !(a == b); }

    LaurentPoly2 shifted(int di, int dj) const {
        LaurentPoly2 r(x_, y_);
        for (const auto& [k, c] : terms_) r.terms_[{k.first + di, k.second + dj}] = c;
        return r;
    }
    LaurentPoly2 pow(unsigned n) const {
        LaurentPoly2 r(Int(1), x_, y_), b = *this;
        while (n) {
            if (n & 1u) r *= b;
            b *= b;
            n >>= 1u;
        }
        return r;
    }
    // p(x^{-1}, y).
    LaurentPoly2 x_inverted() const {
        LaurentPoly2 r(x_, y_);
        for (const auto& [k, c] : terms_) r.terms_[{-k.first, k.second}] = c;
        return r;
    }
    // p(x, -y).
    LaurentPoly2 y_negated() const {
        LaurentPoly2 r(x_, y_);
        for (const auto& [k, c] : terms_) r.terms_[k] = k.second % 2 == 0 ? c : Int(-c);
        return r;
    }

    std::string str() const {
        std::vector<std::pair<Key, Int>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return std::pair(a.first.second, a.first.first) < std::pair(b.first.second, b.first.first);
        });
        std::string out;
        for (const auto& [k, c] : v) {
            std::string mono = detail::factor(x_, 2 * k.first);
            std::string fy = detail::factor(y_, 2 * k.second);
            if (!fy.empty()) mono = mono.empty() ? fy : mono + "*" + fy;
            detail::append_term(out, c, mono);
        }
        return out.empty() ? "0" : out;
    }

    static LaurentPoly2 parse(const std::string& text, char x, char y) {
        LaurentPoly2 p(x, y);
        detail::TermParser tp{text};
        if (tp.done()) fail(Errc::MalformedSyntax, "empty polynomial");
        bool first = true;
        while (!tp.done()) {
            int sg = tp.sign(first);
            first = false;
            Int c;
            std::map<char, int> ex;
            tp.term(c, ex);
            int i = 0, j = 0;
            for (const auto& [v, e] : ex) {
                if (e % 2 != 0) fail(Errc::MalformedSyntax, "fractional exponent in two-variable polynomial");
                if (v == x) {
                    i += e / 2;
                } else if (v == y) {
                    j += e / 2;
                } else {
                    fail(Errc::MalformedSyntax, std::string("unexpected variable ") + v);
                }
            }
            p.add_term(i, j, sg < 0 ? Int(-c) : c);
        }
        return p;
    }

private:
    template <class F>
    int extreme(F f, bool want_max) const {
        int best = f(terms_.begin()->first);
        for (const auto& kv : terms_) {
            int v = f(kv.first);
            best = want_max ? std::max(best, v) : std::min(best, v);
        }
        return best;
    }

    std::map<Key, Int> terms_;
    char x_ = 'v';
    char y_ = 'z';
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly1& p) { return os << p.str(); }
inline std::ostream& operator<<(std::ostream& os, const LaurentPoly2& p) { return os << p.str(); }

}  // namespace knotpos
