#pragma once

// Exact arithmetic over the Gaussian integers Z[i] and the field Q(i),
// dense univariate polynomials over Q(i), and sparse bivariate integer
// polynomials. Everything here is exact; no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frv/errors.hpp"

namespace frv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------- GaussInt

struct GaussInt {
    BigInt re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long long r, long long i) : re(r), im(i) {}
    explicit GaussInt(long long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussInt conj() const { return {re, -im}; }
    BigInt norm() const { return re * re + im * im; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussInt operator*(const BigInt& c, const GaussInt& a) { return {c * a.re, c * a.im}; }
    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
    // Lexicographic order (re, then im); used for deterministic candidate lists.
    friend bool operator<(const GaussInt& a, const GaussInt& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::string str() const {
        std::string s = re.str();
        if (im == 0) return s;
        if (im > 0) s += "+";
        s += im.str() + "i";
        return s;
    }
};

// ---------------------------------------------------------------- GaussRat

struct GaussRat {
    BigRat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long long r, long long i) : re(r), im(i) {}
    GaussRat(const GaussInt& z) : re(z.re), im(z.im) {} // NOLINT: implicit by design

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
    BigRat norm() const { return re * re + im * im; }

    bool is_integral() const {
        return boost::multiprecision::denominator(re) == 1 &&
               boost::multiprecision::denominator(im) == 1;
    }
    GaussInt to_gauss_int() const {
        if (!is_integral()) throw Error("GaussRat is not a Gaussian integer: " + str());
        return {boost::multiprecision::numerator(re), boost::multiprecision::numerator(im)};
    }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        if (b.is_zero()) throw Error("division by zero in Q(i)");
        BigRat n = b.norm();
        GaussRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    std::string str() const {
        std::string s = re.str();
        if (im == 0) return s;
        if (im > 0) s += "+";
        s += im.str() + "i";
        return s;
    }
};

// --------------------------------------------------------------- GaussPoly
//
// Dense univariate polynomial over Q(i), coefficients stored lowest-degree
// first. The zero polynomial has an empty coefficient vector and degree -1.

struct GaussPoly {
    std::vector<GaussRat> c;

    GaussPoly() = default;
    explicit GaussPoly(std::vector<GaussRat> coeffs) : c(std::move(coeffs)) { normalize(); }

    static GaussPoly from_ints(const std::vector<GaussInt>& coeffs) {
        std::vector<GaussRat> v;
        v.reserve(coeffs.size());
        for (const auto& z : coeffs) v.emplace_back(z);
        return GaussPoly(std::move(v));
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const GaussRat& leading() const {
        if (is_zero()) throw Error("leading coefficient of the zero polynomial");
        return c.back();
    }
    GaussRat coeff(std::size_t i) const { return i < c.size() ? c[i] : GaussRat(); }
    bool is_monic() const { return !is_zero() && leading() == GaussRat(1, 0); }

    bool is_integral() const {
        for (const auto& z : c)
            if (!z.is_integral()) return false;
        return true;
    }
    std::vector<GaussInt> to_gauss_ints() const {
        std::vector<GaussInt> v;
        v.reserve(c.size());
        for (const auto& z : c) v.push_back(z.to_gauss_int());
        return v;
    }

    GaussRat eval(const GaussRat& x) const {
        GaussRat acc;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }

    GaussPoly derivative() const {
        if (c.size() <= 1) return GaussPoly();
        std::vector<GaussRat> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = GaussRat(BigRat(i), BigRat(0)) * c[i];
        return GaussPoly(std::move(d));
    }

    GaussPoly monic() const {
        if (is_zero()) return *this;
        GaussPoly r = *this;
        GaussRat inv = GaussRat(1, 0) / leading();
        for (auto& z : r.c) z = z * inv;
        return r;
    }

    friend GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) {
        std::vector<GaussRat> v(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return GaussPoly(std::move(v));
    }
    friend GaussPoly operator-(const GaussPoly& a, const GaussPoly& b) {
        std::vector<GaussRat> v(std::max(a.c.size(), b.c.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return GaussPoly(std::move(v));
    }
    friend GaussPoly operator*(const GaussPoly& a, const GaussPoly& b) {
        if (a.is_zero() || b.is_zero()) return GaussPoly();
        std::vector<GaussRat> v(a.c.size() + b.c.size() - 1);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) v[i + j] = v[i + j] + a.c[i] * b.c[j];
        return GaussPoly(std::move(v));
    }
    friend bool operator==(const GaussPoly& a, const GaussPoly& b) { return a.c == b.c; }
    friend bool operator!=(const GaussPoly& a, const GaussPoly& b) { return !(a == b); }

    std::string str(const std::string& var = "T") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c[i].str() + ")";
            if (i >= 1) s += "*" + var;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

struct DivRem {
    GaussPoly quot, rem;
};

inline DivRem poly_divrem(const GaussPoly& a, const GaussPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    GaussPoly r = a;
    std::vector<GaussRat> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1);
    GaussRat lead_inv = GaussRat(1, 0) / b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        GaussRat f = r.leading() * lead_inv;
        q[static_cast<std::size_t>(shift)] = q[static_cast<std::size_t>(shift)] + f;
        // r -= f * T^shift * b
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            std::size_t k = i + static_cast<std::size_t>(shift);
            r.c[k] = r.c[k] - f * b.c[i];
        }
        r.normalize();
    }
    return {GaussPoly(std::move(q)), r};
}

// Exact division; throws if the remainder is nonzero.
inline GaussPoly poly_exact_div(const GaussPoly& a, const GaussPoly& b) {
    DivRem d = poly_divrem(a, b);
    if (!d.rem.is_zero()) throw Error("polynomial division is not exact");
    return d.quot;
}

// Monic gcd over Q(i)[T].
inline GaussPoly poly_gcd_monic(GaussPoly a, GaussPoly b) {
    while (!b.is_zero()) {
        GaussPoly r = poly_divrem(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

// Fast T^n mod m (m nonconstant), used for cyclotomic gcds.
inline GaussPoly poly_pow_t_mod(std::uint64_t n, const GaussPoly& m) {
    if (m.degree() < 1) throw Error("poly_pow_t_mod needs a nonconstant modulus");
    GaussPoly result(std::vector<GaussRat>{GaussRat(1, 0)});
    GaussPoly base(std::vector<GaussRat>{GaussRat(0, 0), GaussRat(1, 0)});
    base = poly_divrem(base, m).rem;
    while (n) {
        if (n & 1) result = poly_divrem(result * base, m).rem;
        base = poly_divrem(base * base, m).rem;
        n >>= 1;
    }
    return result;
}

// The shaped cubic T^3 - b T^2 + p*conj(b) T - p^3, lowest-degree first.
inline GaussPoly poly_expand_shaped(const GaussInt& b, std::uint32_t p) {
    BigInt P(p);
    std::vector<GaussInt> v{GaussInt(-P * P * P, 0), P * b.conj(), -b, GaussInt(1, 0)};
    return GaussPoly::from_ints(v);
}

// ------------------------------------------------------------ BivarIntPoly
//
// Sparse bivariate polynomial with integer coefficients, exact arithmetic.
// Keys are (deg_x, deg_y).

struct BivarIntPoly {
    std::map<std::pair<int, int>, BigInt> t;

    static BivarIntPoly x() {
        BivarIntPoly p;
        p.t[{1, 0}] = 1;
        return p;
    }
    static BivarIntPoly y() {
        BivarIntPoly p;
        p.t[{0, 1}] = 1;
        return p;
    }
    static BivarIntPoly constant(BigInt c) {
        BivarIntPoly p;
        if (c != 0) p.t[{0, 0}] = std::move(c);
        return p;
    }

    void prune() {
        for (auto it = t.begin(); it != t.end();) {
            if (it->second == 0) it = t.erase(it);
            else ++it;
        }
    }
    bool is_zero() const { return t.empty(); }
    int deg_x() const {
        int d = 0;
        for (const auto& [k, v] : t) { (void)v; d = std::max(d, k.first); }
        return d;
    }
    int deg_y() const {
        int d = 0;
        for (const auto& [k, v] : t) { (void)v; d = std::max(d, k.second); }
        return d;
    }

    friend BivarIntPoly operator+(const BivarIntPoly& a, const BivarIntPoly& b) {
        BivarIntPoly r = a;
        for (const auto& [k, v] : b.t) r.t[k] += v;
        r.prune();
        return r;
    }
    friend BivarIntPoly operator-(const BivarIntPoly& a, const BivarIntPoly& b) {
        BivarIntPoly r = a;
        for (const auto& [k, v] : b.t) r.t[k] -= v;
        r.prune();
        return r;
    }
    friend BivarIntPoly operator-(const BivarIntPoly& a) {
        BivarIntPoly r;
        for (const auto& [k, v] : a.t) r.t[k] = -v;
        return r;
    }
    friend BivarIntPoly operator*(const BivarIntPoly& a, const BivarIntPoly& b) {
        BivarIntPoly r;
        for (const auto& [ka, va] : a.t)
            for (const auto& [kb, vb] : b.t)
                r.t[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
        r.prune();
        return r;
    }
    friend bool operator==(const BivarIntPoly& a, const BivarIntPoly& b) { return a.t == b.t; }
    friend bool operator!=(const BivarIntPoly& a, const BivarIntPoly& b) { return !(a == b); }

    // P(px, py): substitute polynomials for the variables.
    BivarIntPoly subst(const BivarIntPoly& px, const BivarIntPoly& py) const {
        int dx = deg_x(), dy = deg_y();
        std::vector<BivarIntPoly> xp(static_cast<std::size_t>(dx) + 1), yp(static_cast<std::size_t>(dy) + 1);
        xp[0] = constant(1);
        for (int i = 1; i <= dx; ++i) xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * px;
        yp[0] = constant(1);
        for (int j = 1; j <= dy; ++j) yp[static_cast<std::size_t>(j)] = yp[static_cast<std::size_t>(j - 1)] * py;
        BivarIntPoly r;
        for (const auto& [k, v] : t)
            r = r + constant(v) * xp[static_cast<std::size_t>(k.first)] * yp[static_cast<std::size_t>(k.second)];
        return r;
    }

    BigInt eval_int(const BigInt& xv, const BigInt& yv) const {
        BigInt s = 0;
        for (const auto& [k, v] : t) {
            BigInt term = v;
            for (int i = 0; i < k.first; ++i) term *= xv;
            for (int j = 0; j < k.second; ++j) term *= yv;
            s += term;
        }
        return s;
    }

    // Dense coefficient grid, grid[i][j] = coefficient of x^i y^j.
    std::vector<std::vector<BigInt>> grid() const {
        std::vector<std::vector<BigInt>> g(static_cast<std::size_t>(deg_x()) + 1,
                                           std::vector<BigInt>(static_cast<std::size_t>(deg_y()) + 1, BigInt(0)));
        for (const auto& [k, v] : t) g[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(k.second)] = v;
        return g;
    }
};

} // namespace frv
