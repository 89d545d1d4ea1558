#pragma once

// Local Frobenius data at a good prime p:
//   * the shaped characteristic cubic T^3 - b T^2 + p*conj(b) T - p^3,
//   * purity certification (all roots on |z| = p^{w/2}),
//   * counting distinct roots in the quadratic local field Q(i)_{v2}
//     (2-adic completion of Q(i), uniformizer pi = 1 + i),
//   * detecting roots of the form p * (root of unity) — the local
//     obstruction to cuspidality,
//   * the inverse local Euler factor.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "frv/errors.hpp"
#include "frv/gauss.hpp"
#include "frv/nt.hpp"

namespace frv {

enum class Convention { chi, none };

inline const char* convention_name(Convention c) { return c == Convention::chi ? "chi" : "none"; }

// b_p from the raw spectral trace a_p: under the 'chi' convention the trace
// is twisted by the quadratic character chi_{-2}(p); 'none' keeps it raw.
inline GaussInt bp_from_ap(const GaussInt& a, std::uint32_t p, Convention conv) {
    require_odd_prime(p);
    BigInt p2 = BigInt(p) * p;
    if (a.norm() > 9 * p2)
        throw UsageError("a_p violates the Weil bound |a|^2 <= 9 p^2");
    if (conv == Convention::none) return a;
    int c = chi_minus2(p);
    return c > 0 ? a : -a;
}

struct FrobCubic {
    std::uint32_t p = 0;
    GaussInt b;
    GaussPoly poly; // T^3 - b T^2 + p conj(b) T - p^3, lowest-degree first

    static FrobCubic make(const GaussInt& b, std::uint32_t p) {
        require_odd_prime(p);
        FrobCubic f;
        f.p = p;
        f.b = b;
        f.poly = poly_expand_shaped(b, p);
        return f;
    }
};

struct ShapeResult {
    bool ok = false;
    GaussInt b;         // valid iff ok
    std::string reason; // set iff !ok
};

// Does the polynomial have the exact shape T^3 - b T^2 + p conj(b) T - p^3
// for some Gaussian integer b?
inline ShapeResult shape_check(const GaussPoly& poly, std::uint32_t p) {
    ShapeResult res;
    if (poly.degree() != 3) {
        res.reason = "degree is not 3";
        return res;
    }
    if (!poly.is_monic()) {
        res.reason = "not monic";
        return res;
    }
    GaussRat c2 = poly.coeff(2);
    if (!c2.is_integral()) {
        res.reason = "cubic coefficient -b is not a Gaussian integer";
        return res;
    }
    GaussInt b = (-c2).to_gauss_int();
    BigInt P(p);
    if (poly.coeff(1) != GaussRat(GaussInt(P, 0) * b.conj())) {
        res.reason = "linear coefficient differs from p * conj(b)";
        return res;
    }
    if (poly.coeff(0) != GaussRat(GaussInt(-P * P * P, 0))) {
        res.reason = "constant coefficient differs from -p^3";
        return res;
    }
    res.ok = true;
    res.b = b;
    return res;
}

// ----------------------------------------------------------------- purity

// Certified purity check: every complex root of the (monic) polynomial has
// |z| = p^{w/2} within relative tolerance tol. Uses Durand-Kerner with
// Weierstrass a-posteriori disks; an exact integral check on the constant
// coefficient (|prod roots| = p^{deg*w/2}) can refute purity without any
// numerics. Throws UncertifiedError when the numerics cannot decide at the
// requested tolerance, rather than guessing.
inline bool is_pure(const GaussPoly& poly_in, std::uint32_t p, int w = 2, double tol = 1e-9) {
    if (poly_in.is_zero() || poly_in.degree() < 1)
        throw UsageError("purity requires a nonconstant polynomial");
    GaussPoly poly = poly_in.monic();
    const int n = poly.degree();

    // exact necessary condition: norm(c0) = p^(n*w)
    {
        BigInt target = 1;
        for (int i = 0; i < n * w; ++i) target *= p;
        GaussRat c0 = poly.coeff(0);
        if (!c0.is_integral() || c0.to_gauss_int().norm() != target) return false;
    }

    using C = std::complex<double>;
    std::vector<C> coef(static_cast<std::size_t>(n) + 1);
    double maxc = 0.0;
    for (int i = 0; i <= n; ++i) {
        GaussRat z = poly.coeff(static_cast<std::size_t>(i));
        coef[static_cast<std::size_t>(i)] = C(static_cast<double>(z.re), static_cast<double>(z.im));
        maxc = std::max(maxc, std::abs(coef[static_cast<std::size_t>(i)]));
    }
    auto eval = [&](C z) {
        C acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * z + coef[static_cast<std::size_t>(i)];
        return acc;
    };

    double R = 1.0 + maxc; // Cauchy bound
    std::vector<C> z(static_cast<std::size_t>(n));
    C seed(0.4, 0.9);
    C cur = seed;
    for (int i = 0; i < n; ++i) {
        z[static_cast<std::size_t>(i)] = cur * R;
        cur *= seed;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            C denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            if (denom == C(0)) {
                denom = C(1e-300, 0);
            }
            C delta = eval(z[static_cast<std::size_t>(i)]) / denom;
            z[static_cast<std::size_t>(i)] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14 * R) break;
    }

    // Weierstrass disks D(z_i, n*w_i) jointly contain all roots.
    std::vector<double> rad(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double denom = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != i) denom *= std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
        if (denom == 0.0) throw UncertifiedError("root cluster collapsed; cannot certify");
        rad[static_cast<std::size_t>(i)] = n * std::abs(eval(z[static_cast<std::size_t>(i)])) / denom;
    }

    double rho = std::pow(static_cast<double>(p), w / 2.0);
    bool all_on = true;
    for (int i = 0; i < n; ++i) {
        double off = std::abs(std::abs(z[static_cast<std::size_t>(i)]) - rho);
        if (off + rad[static_cast<std::size_t>(i)] > tol * rho) all_on = false;
    }
    if (all_on) return true;

    // to certify impurity: some disk lies entirely off the band, and disks
    // are pairwise disjoint (then each contains exactly one root)
    bool disjoint = true;
    for (int i = 0; i < n && disjoint; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <=
                rad[static_cast<std::size_t>(i)] + rad[static_cast<std::size_t>(j)]) {
                disjoint = false;
                break;
            }
    if (disjoint) {
        for (int i = 0; i < n; ++i) {
            double off = std::abs(std::abs(z[static_cast<std::size_t>(i)]) - rho);
            if (off - rad[static_cast<std::size_t>(i)] > tol * rho) return false;
        }
    }
    throw UncertifiedError("purity undecided at tolerance " + std::to_string(tol));
}

// ---------------------------------------- distinct roots in Q(i) above 2
//
// The completion of Q(i) at the unique place above 2 is totally ramified
// over Q', with uniformizer pi = 1 + i and residue field F_2. For a monic
// polynomial over Z[i] every root in the completion is integral, so
// counting distinct roots reduces to counting them in the valuation ring.
//
// Algorithm: Newton polygon first (integer slopes select the possible root
// valuations; T^3 - 2 dies here with no recursion at all), then per slope a
// digit-by-digit Hensel search in the residue tree: a residue branch with
// unit derivative is certified by Hensel's lemma and counts exactly one
// root; a branch with non-unit derivative is rescaled (T -> r + pi T,
// content stripped) and recursed. The recursion depth is the working
// precision: it starts at 64 pi-adic digits and doubles on exhaustion up to
// 2^14, after which a typed error is raised. For square-free input
// (enforced via gcd with the derivative when the discriminant vanishes)
// the branches separate at depth bounded by the valuation of the
// discriminant, so the cap is never reached on meaningful input.

namespace padic {

inline const GaussInt& pi() {
    static const GaussInt z(1, 1);
    return z;
}

inline constexpr unsigned VPI_INF = std::numeric_limits<unsigned>::max();

// pi-adic valuation: v_pi(z) = v_2(norm(z)) in this totally ramified field.
inline unsigned vpi(const GaussInt& z) {
    if (z.is_zero()) return VPI_INF;
    return static_cast<unsigned>(boost::multiprecision::lsb(z.norm()));
}

// exact division by pi
inline GaussInt div_pi(const GaussInt& z) {
    // z / (1+i) = z * (1-i) / 2
    BigInt re = z.re + z.im, im = z.im - z.re;
    if (re % 2 != 0 || im % 2 != 0) throw Error("div_pi: operand not divisible by pi");
    return {re / 2, im / 2};
}

using IPoly = std::vector<GaussInt>; // lowest-degree first

inline GaussInt ipoly_eval(const IPoly& f, const GaussInt& x) {
    GaussInt acc;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

inline IPoly ipoly_derivative(const IPoly& f) {
    if (f.size() <= 1) return {};
    IPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = GaussInt(BigInt(i), 0) * f[i];
    return d;
}

// g(c + s*T) via Horner in polynomial form
inline IPoly ipoly_compose_linear(const IPoly& g, const GaussInt& c, const GaussInt& s) {
    IPoly res{g.back()};
    for (std::size_t i = g.size() - 1; i-- > 0;) {
        IPoly next(res.size() + 1);
        for (std::size_t j = 0; j < res.size(); ++j) {
            next[j] = next[j] + res[j] * c;
            next[j + 1] = next[j + 1] + res[j] * s;
        }
        next[0] = next[0] + g[i];
        while (!next.empty() && next.back().is_zero()) next.pop_back();
        res = std::move(next);
    }
    return res;
}

inline void ipoly_strip_content(IPoly& f) {
    unsigned minv = VPI_INF;
    for (const auto& c : f)
        if (!c.is_zero()) minv = std::min(minv, vpi(c));
    if (minv == VPI_INF || minv == 0) return;
    for (auto& c : f)
        for (unsigned i = 0; i < minv; ++i)
            if (!c.is_zero()) c = div_pi(c);
}

// Number of distinct roots of f in the valuation ring, by residue search.
inline int count_roots_all(const IPoly& f, unsigned depth);

inline int count_branch(const IPoly& f, const GaussInt& r, unsigned depth) {
    GaussInt fr = ipoly_eval(f, r);
    if (vpi(fr) == 0) return 0; // f(r) is a unit: no root in this residue class
    IPoly d = ipoly_derivative(f);
    GaussInt dr = ipoly_eval(d, r);
    if (vpi(dr) == 0) return 1; // Hensel: simple certified root
    if (depth == 0)
        throw PrecisionExhausted("pi-adic residue search exceeded the working precision");
    IPoly g = ipoly_compose_linear(f, r, pi());
    ipoly_strip_content(g);
    return count_roots_all(g, depth - 1);
}

inline int count_roots_all(const IPoly& f, unsigned depth) {
    // residue field is F_2 = {0, 1}
    return count_branch(f, GaussInt(0, 0), depth) + count_branch(f, GaussInt(1, 0), depth);
}

inline int count_roots_unit(const IPoly& f, unsigned depth) {
    return count_branch(f, GaussInt(1, 0), depth);
}

struct PolygonEdge {
    int i0, i1;       // coefficient indices
    unsigned v0, v1;  // their valuations
    bool integer_slope;
    unsigned lambda;  // root valuation, valid iff integer_slope
};

inline std::vector<PolygonEdge> newton_polygon(const IPoly& f) {
    std::vector<std::pair<int, unsigned>> pts;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_zero()) pts.emplace_back(static_cast<int>(i), vpi(f[i]));
    // lower convex hull, left to right
    std::vector<std::pair<int, unsigned>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-pt
            long long lhs = (static_cast<long long>(b.second) - a.second) * (pt.first - a.first);
            long long rhs = (static_cast<long long>(pt.second) - a.second) * (b.first - a.first);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(pt);
    }
    std::vector<PolygonEdge> edges;
    for (std::size_t e = 1; e < hull.size(); ++e) {
        PolygonEdge ed{};
        ed.i0 = hull[e - 1].first;
        ed.v0 = hull[e - 1].second;
        ed.i1 = hull[e].first;
        ed.v1 = hull[e].second;
        unsigned drop = ed.v0 - ed.v1; // v decreases along the lower hull of a monic integral poly
        int run = ed.i1 - ed.i0;
        ed.integer_slope = (ed.v0 >= ed.v1) && (drop % static_cast<unsigned>(run) == 0);
        ed.lambda = ed.integer_slope ? drop / static_cast<unsigned>(run) : 0;
        edges.push_back(ed);
    }
    return edges;
}

// distinct roots in the valuation ring of a monic square-free poly
inline int count_distinct_integral_roots(IPoly f, unsigned depth) {
    int count = 0;
    // strip a root at 0 (square-free: at most one)
    if (!f.empty() && f[0].is_zero()) {
        ++count;
        f.erase(f.begin());
        if (!f.empty() && f[0].is_zero())
            throw Error("square-free polynomial has a repeated zero root");
    }
    if (f.size() <= 1) return count;
    for (const auto& ed : newton_polygon(f)) {
        // Non-integer slope: the roots on this segment have valuation
        // outside Z = v_pi(Q(i)_{v2}^*), hence lie in no subfield we count.
        if (!ed.integer_slope) continue;
        // substitute T = pi^lambda U and count unit roots of the result
        GaussInt pil(1, 0);
        for (unsigned t = 0; t < ed.lambda; ++t) pil = pil * pi();
        IPoly g(f.size());
        GaussInt cur(1, 0);
        for (std::size_t j = 0; j < f.size(); ++j) {
            g[j] = f[j] * cur;
            cur = cur * pil;
        }
        ipoly_strip_content(g);
        count += count_roots_unit(g, depth);
    }
    return count;
}

} // namespace padic

// Discriminant of a monic cubic T^3 + b T^2 + c T + d.
inline GaussInt cubic_discriminant(const GaussInt& b, const GaussInt& c, const GaussInt& d) {
    GaussInt e18(18, 0), e4(4, 0), e27(27, 0);
    return e18 * b * c * d - e4 * b * b * b * d + b * b * c * c - e4 * c * c * c - e27 * d * d;
}

// Number of distinct roots of a monic integral polynomial (degree <= 3) in
// the 2-adic completion of Q(i).
inline int roots_in_q2i(const GaussPoly& poly_in) {
    if (poly_in.is_zero() || poly_in.degree() < 1 || poly_in.degree() > 3)
        throw UsageError("roots_in_q2i expects a nonconstant polynomial of degree <= 3");
    if (!poly_in.is_monic()) throw UsageError("roots_in_q2i expects a monic polynomial");
    if (!poly_in.is_integral()) throw UsageError("roots_in_q2i expects Gaussian-integer coefficients");

    GaussPoly poly = poly_in;
    // square-free reduction when the discriminant vanishes (or for degree < 3,
    // when gcd with the derivative is nontrivial)
    bool maybe_repeated = true;
    if (poly.degree() == 3) {
        std::vector<GaussInt> c = poly.to_gauss_ints();
        GaussInt disc = cubic_discriminant(c[2], c[1], c[0]);
        maybe_repeated = disc.is_zero();
    }
    if (maybe_repeated) {
        GaussPoly g = poly_gcd_monic(poly, poly.derivative());
        if (g.degree() >= 1) {
            poly = poly_exact_div(poly, g);
            if (!poly.is_integral())
                throw Error("square-free part of a monic integral polynomial must be integral");
        }
    }

    padic::IPoly f = poly.to_gauss_ints();
    for (unsigned depth = 64; depth <= (1u << 14); depth *= 2) {
        try {
            return padic::count_distinct_integral_roots(f, depth);
        } catch (const PrecisionExhausted&) {
            if (depth * 2 > (1u << 14)) throw;
        }
    }
    throw PrecisionExhausted("pi-adic root count did not stabilize below the precision cap");
}

// ------------------------------------------------- unit-times-p root probe
//
// Finds the roots of a monic polynomial that have the form p * zeta with
// zeta a root of unity of order <= max_order, reporting each with the
// exact order. Works on Q(T) = poly(pT)/lead, stripping cyclotomic content
// in ascending order so every reported order is exact. Orders whose
// primitive roots lie in Q(i) (1, 2, 4) yield explicit Gaussian-integer
// roots; other orders are reported as the surviving irreducible-over-Q(i)
// factor.

struct CuspEntry {
    std::uint32_t order = 0;
    bool has_root = false;
    GaussInt root;       // = p * zeta, valid iff has_root
    GaussPoly factor;    // unit-scale factor with the primitive-order roots, iff !has_root
};

inline std::vector<CuspEntry> unit_times_p_roots(const GaussPoly& poly_in, std::uint32_t p,
                                                 std::uint32_t max_order = 64) {
    if (poly_in.is_zero() || poly_in.degree() < 1)
        throw UsageError("unit_times_p_roots expects a nonconstant polynomial");
    if (max_order < 1 || max_order > 256) throw UsageError("max_order must be in [1, 256]");
    require_odd_prime(p);

    // Q(T) = poly(pT), made monic
    GaussPoly q;
    {
        std::vector<GaussRat> c(poly_in.c.size());
        GaussRat scale(1, 0);
        GaussRat P(BigRat(p), BigRat(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = poly_in.coeff(i) * scale;
            scale = scale * P;
        }
        q = GaussPoly(std::move(c)).monic();
    }

    std::vector<CuspEntry> out;
    for (std::uint32_t n = 1; n <= max_order && q.degree() >= 1; ++n) {
        // gcd(q, T^n - 1) via T^n mod q
        GaussPoly tn = poly_pow_t_mod(n, q);
        GaussPoly tn1 = tn - GaussPoly(std::vector<GaussRat>{GaussRat(1, 0)});
        GaussPoly g = poly_gcd_monic(q, tn1);
        if (g.degree() < 1) continue;
        q = poly_exact_div(q, g);
        // split off the roots of unity of order exactly n that lie in Q(i)
        static const std::array<std::pair<std::uint32_t, GaussInt>, 4> qi_units{{
            {1, GaussInt(1, 0)}, {2, GaussInt(-1, 0)}, {4, GaussInt(0, 1)}, {4, GaussInt(0, -1)}}};
        for (const auto& [ord, zeta] : qi_units) {
            if (ord != n) continue;
            if (g.degree() >= 1 && g.eval(GaussRat(zeta)).is_zero()) {
                CuspEntry e;
                e.order = n;
                e.has_root = true;
                e.root = GaussInt(BigInt(p) * zeta.re, BigInt(p) * zeta.im);
                out.push_back(e);
                GaussPoly lin(std::vector<GaussRat>{GaussRat(-zeta.re, -zeta.im), GaussRat(1, 0)});
                g = poly_exact_div(g, lin);
            }
        }
        if (g.degree() >= 1) {
            CuspEntry e;
            e.order = n;
            e.has_root = false;
            e.factor = g;
            out.push_back(e);
        }
    }
    return out;
}

// ------------------------------------------------------- local Euler factor

struct LocalFactor {
    std::uint32_t p = 0;
    GaussInt b;
    GaussPoly poly; // 1 - b X + p conj(b) X^2 - p^3 X^3, lowest-degree first

    std::string display() const {
        auto term = [](const GaussInt& z) { return "(" + z.str() + ")"; };
        BigInt P(p);
        BigInt p3 = P * P * P;
        return "1 - " + term(b) + "*X + " + term(GaussInt(P, 0) * b.conj()) + "*X^2 - " + p3.str() +
               "*X^3";
    }
};

inline LocalFactor euler_factor(const GaussInt& b, std::uint32_t p) {
    require_odd_prime(p);
    LocalFactor lf;
    lf.p = p;
    lf.b = b;
    BigInt P(p);
    lf.poly = GaussPoly::from_ints(
        {GaussInt(1, 0), -b, GaussInt(P, 0) * b.conj(), GaussInt(-P * P * P, 0)});
    return lf;
}

} // namespace frv
