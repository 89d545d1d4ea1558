#pragma once

// Independent enumeration oracles for the two point counts. These share
// nothing with the production kernels except the modulus-selection routine
// and the integer coefficients of f:
//
//   * no discrete-log or Zech tables (plain coordinate arithmetic),
//   * no quadratic character at all for the straight count (a literal
//     t-loop),
//   * no Frobenius matrices or kernel subspaces for the twisted count
//     (membership in the solution set of x^{q^2} = -x is tested by honest
//     square-and-multiply powering, element by element, over F_{q^4}).
//
// They are exponential-cost and exist purely to certify the fast kernels
// on small (p, k).

#include <cstdint>
#include <vector>

#include "frv/errors.hpp"
#include "frv/field.hpp"
#include "frv/surface.hpp"

namespace frv {
namespace oracle {

// Straight count by brute force: enumerate all (x, y, t) in F_q^3 and test
// t*t == f(x,y) with generic coordinate arithmetic.
inline std::int64_t naive_straight(const SurfaceModel& model, std::uint32_t p, std::uint32_t k) {
    FieldSpec F = make_field_any(p, k, /*build_tables=*/false);
    // coefficient table of f reduced mod p
    auto g = model.f.grid();
    std::size_t dx = g.size() - 1, dy = g[0].size() - 1;
    std::vector<std::vector<std::uint64_t>> C(dx + 1, std::vector<std::uint64_t>(dy + 1, 0));
    for (std::size_t i = 0; i <= dx; ++i)
        for (std::size_t j = 0; j <= dy; ++j)
            C[i][j] = F.scalar(static_cast<std::int64_t>(g[i][j] % F.p));

    std::int64_t count = 0;
    for (std::uint64_t x = 0; x < F.q; ++x) {
        for (std::uint64_t y = 0; y < F.q; ++y) {
            // f(x,y) by repeated multiplication, no Horner shortcuts shared
            // with the kernel (evaluated via explicit power tables)
            std::uint64_t fv = 0;
            std::uint64_t xi = 1;
            for (std::size_t i = 0; i <= dx; ++i) {
                std::uint64_t yj = 1;
                for (std::size_t j = 0; j <= dy; ++j) {
                    if (C[i][j]) fv = F.add(fv, F.mul(C[i][j], F.mul(xi, yj)));
                    yj = F.mul(yj, y);
                }
                xi = F.mul(xi, x);
            }
            for (std::uint64_t t = 0; t < F.q; ++t)
                if (F.mul(t, t) == fv) ++count;
        }
    }
    return count;
}

namespace detail {

// Minimal standalone coefficient-vector arithmetic over F_p for the big
// field L = F_{q^4} = F_p[z]/(m), independent of FieldSpec's packed engine.
struct LPoly {
    std::vector<std::uint32_t> c; // length n, coefficients in [0, p)
};

struct LCtx {
    std::uint32_t p;
    std::uint32_t n; // extension degree over F_p
    std::vector<std::uint32_t> m; // monic modulus, length n+1

    LPoly mul(const LPoly& a, const LPoly& b) const {
        std::vector<std::uint64_t> prod(2 * n - 1, 0);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!a.c[i]) continue;
            for (std::uint32_t j = 0; j < n; ++j) prod[i + j] += static_cast<std::uint64_t>(a.c[i]) * b.c[j];
        }
        for (std::uint32_t d = 2 * n - 2; d >= n && d < 2 * n; --d) {
            std::uint64_t cc = prod[d] % p;
            prod[d] = 0;
            if (!cc) continue;
            for (std::uint32_t j = 0; j < n; ++j) {
                if (!m[j]) continue;
                prod[d - n + j] += static_cast<std::uint64_t>(p) * p - cc * m[j] % p;
            }
        }
        LPoly r;
        r.c.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) r.c[i] = static_cast<std::uint32_t>(prod[i] % p);
        return r;
    }

    LPoly pow(LPoly base, std::uint64_t e) const {
        LPoly r;
        r.c.assign(n, 0);
        r.c[0] = 1;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    LPoly neg(const LPoly& a) const {
        LPoly r;
        r.c.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) r.c[i] = a.c[i] ? p - a.c[i] : 0;
        return r;
    }
    LPoly add(const LPoly& a, const LPoly& b) const {
        LPoly r;
        r.c.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            std::uint32_t s = a.c[i] + b.c[i];
            r.c[i] = s >= p ? s - p : s;
        }
        return r;
    }
    LPoly from_index(std::uint64_t idx) const {
        LPoly r;
        r.c.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            r.c[i] = static_cast<std::uint32_t>(idx % p);
            idx /= p;
        }
        return r;
    }
    bool eq(const LPoly& a, const LPoly& b) const { return a.c == b.c; }
    bool is_zero(const LPoly& a) const {
        for (auto v : a.c)
            if (v) return false;
        return true;
    }
};

} // namespace detail

// Twisted count by brute force. Enumerates every element of F_{q^4},
// selects the solutions of x^{q^2} = -x by honest powering, sets y = x^q,
// and counts the t in the F_q-subfield (also found by honest powering,
// t^q = t) with t^2 = f(x, y).
inline std::int64_t naive_twisted(const SurfaceModel& model, std::uint32_t p, std::uint32_t k) {
    if (model.autom == Autom::identity) return naive_straight(model, p, k);
    if (model.autom != Autom::phi_standard)
        throw UsageError("the twisted oracle supports the phi automorphism (or the identity degeneration)");

    std::uint32_t n = 4 * k;
    FieldSpec big = make_field_any(p, n, /*build_tables=*/false);
    detail::LCtx L{p, n, big.modulus};

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    std::uint64_t q4 = 1;
    for (std::uint32_t i = 0; i < n; ++i) q4 *= p;

    // the F_q-subfield of L, by exhaustive honest powering
    std::vector<detail::LPoly> subfield;
    subfield.reserve(q);
    for (std::uint64_t idx = 0; idx < q4; ++idx) {
        detail::LPoly t = L.from_index(idx);
        if (L.eq(L.pow(t, q), t)) subfield.push_back(t);
    }
    if (subfield.size() != q)
        throw CountingBugError("twisted oracle: F_q-subfield of F_{q^4} has wrong size");

    // coefficients of f mod p
    auto g = model.f.grid();
    std::size_t dx = g.size() - 1, dy = g[0].size() - 1;
    std::vector<std::vector<std::uint32_t>> C(dx + 1, std::vector<std::uint32_t>(dy + 1, 0));
    for (std::size_t i = 0; i <= dx; ++i)
        for (std::size_t j = 0; j <= dy; ++j) {
            std::int64_t r = static_cast<std::int64_t>(g[i][j] % p);
            if (r < 0) r += p;
            C[i][j] = static_cast<std::uint32_t>(r);
        }

    std::int64_t count = 0;
    std::uint64_t seen_solutions = 0;
    for (std::uint64_t idx = 0; idx < q4; ++idx) {
        detail::LPoly x = L.from_index(idx);
        detail::LPoly xq2 = L.pow(x, q * q);
        if (!L.eq(xq2, L.neg(x))) continue;
        ++seen_solutions;
        detail::LPoly y = L.pow(x, q);
        // consistency of the fixed-point equations: y^q must equal -x
        if (!L.eq(L.pow(y, q), L.neg(x)))
            throw CountingBugError("twisted oracle: y^q != -x on a solution");
        // f(x, y)
        detail::LPoly fv = L.from_index(0);
        detail::LPoly xi = L.from_index(1);
        for (std::size_t i = 0; i <= dx; ++i) {
            detail::LPoly yj = L.from_index(1);
            for (std::size_t j = 0; j <= dy; ++j) {
                if (C[i][j]) {
                    detail::LPoly term = L.mul(xi, yj);
                    detail::LPoly scaled = term;
                    for (auto& cc : scaled.c) cc = static_cast<std::uint32_t>(
                        (static_cast<std::uint64_t>(cc) * C[i][j]) % p);
                    fv = L.add(fv, scaled);
                }
                yj = L.mul(yj, y);
            }
            xi = L.mul(xi, x);
        }
        for (const auto& t : subfield)
            if (L.eq(L.mul(t, t), fv)) ++count;
    }
    if (seen_solutions != q * q)
        throw CountingBugError("twisted oracle: solution set of x^{q^2} = -x has size " +
                               std::to_string(seen_solutions) + ", expected q^2");
    return count;
}

} // namespace oracle
} // namespace frv
