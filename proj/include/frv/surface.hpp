#pragma once

// The surface family and its point-counting kernels.
//
// The affine model is t^2 = f(x,y) with
//   f = x*y*(x^2-1)*(y^2-1)*(x^2-y^2+a*x*y),   default a = 2,
// carrying the order-4 automorphism phi: (x,y,t) -> (y,-x,t).
//
// Two counts are produced per (p,k), q = p^k:
//   * straight N_k = #{(x,y,t) in F_q^3 : t^2 = f(x,y)}
//       = q^2 + sum_{x,y} chi(f(x,y)),
//   * twisted M_k = #{P : Frob_q(P) = phi(P)}, the phi-twisted point count.
//
// For the twisted count the solution set of x^{q^2} = -x inside F_{q^4} is
// an F_q-subspace of dimension 2 (Frobenius acts F_q-linearly on F_{q^4}).
// Writing x = u0*W0 + u1*W1 in a kernel basis of (Frob_q^2 + 1) and
// y = x^q = u0*W0^q + u1*W1^q, the value f(x,y) collapses to a bivariate
// polynomial C(u0,u1) with coefficients in F_q (checked, not assumed), and
//   M_k = q^2 + sum_{u0,u1 in F_q} chi(C(u0,u1)).
// Both counts therefore share one chi-summation kernel.

#include <array>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <chrono>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "frv/errors.hpp"
#include "frv/field.hpp"
#include "frv/gauss.hpp"
#include "frv/nt.hpp"

namespace frv {

inline constexpr std::uint64_t DEFAULT_BUDGET = 1ull << 36;
inline constexpr std::int64_t WEIL_SANITY_FACTOR = 30;

inline std::uint32_t default_workers() {
    if (const char* env = std::getenv("FRV_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 4096) return static_cast<std::uint32_t>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

enum class Autom { phi_standard, identity, swap_xy };

inline const char* autom_name(Autom a) {
    switch (a) {
        case Autom::phi_standard: return "phi";
        case Autom::identity: return "identity";
        case Autom::swap_xy: return "swap";
    }
    return "?";
}

// Does the base automorphism preserve f, i.e. f(sigma(x,y)) == f(x,y)?
inline bool base_map_preserves(const BivarIntPoly& f, Autom a) {
    const BivarIntPoly X = BivarIntPoly::x(), Y = BivarIntPoly::y();
    switch (a) {
        case Autom::phi_standard: return f.subst(Y, -X) == f;
        case Autom::identity: return true;
        case Autom::swap_xy: return f.subst(Y, X) == f;
    }
    return false;
}

struct SurfaceModel {
    std::int64_t a = 2;
    Autom autom = Autom::phi_standard;
    BivarIntPoly f;

    static BivarIntPoly family_poly(std::int64_t a) {
        const BivarIntPoly X = BivarIntPoly::x(), Y = BivarIntPoly::y();
        const BivarIntPoly one = BivarIntPoly::constant(1);
        BivarIntPoly x2 = X * X, y2 = Y * Y;
        return X * Y * (x2 - one) * (y2 - one) * (x2 - y2 + BivarIntPoly::constant(a) * X * Y);
    }

    // Constructs the model and verifies, symbolically and exactly, that the
    // chosen automorphism preserves the defining polynomial. A
    // non-invariant choice is rejected here, before any counting.
    static SurfaceModel make(std::int64_t a = 2, Autom autom = Autom::phi_standard) {
        SurfaceModel m;
        m.a = a;
        m.autom = autom;
        m.f = family_poly(a);
        if (!base_map_preserves(m.f, autom))
            throw ModelError(std::string("automorphism '") + autom_name(autom) +
                             "' does not preserve the defining polynomial (a=" + std::to_string(a) + ")");
        return m;
    }
};

struct CountConfig {
    std::uint32_t workers = default_workers();
    std::uint64_t budget = DEFAULT_BUDGET;
    std::uint64_t chunk = 0;       // 0 = auto: q / (4 * workers), at least 1
    bool force_generic = false;    // test hook: bypass the table kernel
};

struct CountRecord {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::string kind; // "straight" or "twisted"
    std::int64_t count = 0;
    double elapsed_s = 0.0;
};

namespace detail {

// ----------------------------------------------------- chi-summation kernel

struct ChiGrid {
    std::uint32_t dx = 0, dy = 0;
    std::vector<std::uint64_t> cells; // (dx+1) x (dy+1), row-major by x-degree

    std::uint64_t at(std::uint32_t i, std::uint32_t j) const { return cells[i * (dy + 1) + j]; }
};

inline ChiGrid grid_from_bivar(const FieldSpec& F, const BivarIntPoly& f) {
    ChiGrid g;
    g.dx = static_cast<std::uint32_t>(f.deg_x());
    g.dy = static_cast<std::uint32_t>(f.deg_y());
    g.cells.assign(static_cast<std::size_t>(g.dx + 1) * (g.dy + 1), 0);
    for (const auto& [key, v] : f.t) {
        std::int64_t r = static_cast<std::int64_t>(v % F.p);
        g.cells[static_cast<std::size_t>(key.first) * (g.dy + 1) + static_cast<std::size_t>(key.second)] =
            F.scalar(r);
    }
    return g;
}

// One contiguous chunk of the x-loop, table engine. Returns the exact
// integer sum of chi over the chunk.
inline std::int64_t chi_chunk_table(const FieldSpec& F, const ChiGrid& g, std::uint64_t x_begin,
                                    std::uint64_t x_end) {
    const std::uint64_t order = F.q - 1;
    const std::uint32_t dy = g.dy, dx = g.dx;
    std::vector<std::uint32_t> lr(dy + 1);
    std::int64_t sum = 0;
    for (std::uint64_t x = x_begin; x < x_end; ++x) {
        // row coefficients r_j = sum_i C[i][j] x^i (Horner, generic engine)
        for (std::uint32_t j = 0; j <= dy; ++j) {
            std::uint64_t r = g.at(dx, j);
            for (std::uint32_t i = dx; i-- > 0;) r = F.add(F.mul(r, x), g.at(i, j));
            lr[j] = F.log_[r];
        }
        // y = 0 term: value is r_0
        if (lr[0] != LOG_ZERO) sum += (lr[0] & 1) ? -1 : 1;
        // y = g^m, Horner in log space with Zech additions
        for (std::uint64_t m = 0; m < order; ++m) {
            std::uint32_t acc = lr[dy];
            for (std::uint32_t j = dy; j-- > 0;) {
                if (acc != LOG_ZERO) {
                    std::uint64_t t = acc + m;
                    if (t >= order) t -= order;
                    acc = static_cast<std::uint32_t>(t);
                }
                // acc += r_j  (Zech)
                std::uint32_t b = lr[j];
                if (acc == LOG_ZERO) {
                    acc = b;
                } else if (b != LOG_ZERO) {
                    std::uint32_t lo, d;
                    if (acc >= b) {
                        lo = b;
                        d = acc - b;
                    } else {
                        lo = acc;
                        d = b - acc;
                    }
                    std::uint32_t z = F.zech_[d];
                    if (z == LOG_ZERO) {
                        acc = LOG_ZERO;
                    } else {
                        std::uint64_t t = static_cast<std::uint64_t>(lo) + z;
                        if (t >= order) t -= order;
                        acc = static_cast<std::uint32_t>(t);
                    }
                }
            }
            if (acc != LOG_ZERO) sum += (acc & 1) ? -1 : 1;
        }
    }
    return sum;
}

// Generic-engine chunk (coordinate arithmetic, powmod character); used when
// tables are unavailable or explicitly bypassed.
inline std::int64_t chi_chunk_generic(const FieldSpec& F, const ChiGrid& g, std::uint64_t x_begin,
                                      std::uint64_t x_end) {
    const std::uint32_t dy = g.dy, dx = g.dx;
    std::vector<std::uint64_t> row(dy + 1);
    std::int64_t sum = 0;
    for (std::uint64_t x = x_begin; x < x_end; ++x) {
        for (std::uint32_t j = 0; j <= dy; ++j) {
            std::uint64_t r = g.at(dx, j);
            for (std::uint32_t i = dx; i-- > 0;) r = F.add(F.mul(r, x), g.at(i, j));
            row[j] = r;
        }
        for (std::uint64_t y = 0; y < F.q; ++y) {
            std::uint64_t acc = row[dy];
            for (std::uint32_t j = dy; j-- > 0;) acc = F.add(F.mul(acc, y), row[j]);
            sum += F.quad_char_generic(acc);
        }
    }
    return sum;
}

// Deterministic chunked (optionally multi-threaded) chi summation. Partial
// sums are integers combined in chunk order, so the result is independent
// of worker count and scheduling.
inline std::int64_t chi_sum(const FieldSpec& F, const ChiGrid& g, const CountConfig& cfg) {
    const bool use_tables = F.has_tables && !cfg.force_generic;
    std::uint64_t chunk = cfg.chunk ? cfg.chunk : std::max<std::uint64_t>(1, F.q / (4ull * std::max(1u, cfg.workers)));
    std::uint64_t n_chunks = (F.q + chunk - 1) / chunk;
    std::vector<std::int64_t> partial(n_chunks, 0);

    auto run_chunk = [&](std::uint64_t c) {
        std::uint64_t b = c * chunk, e = std::min(F.q, b + chunk);
        partial[c] = use_tables ? chi_chunk_table(F, g, b, e) : chi_chunk_generic(F, g, b, e);
    };

    std::uint32_t workers = std::max(1u, cfg.workers);
    if (workers == 1 || n_chunks == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= n_chunks) break;
                run_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        std::uint32_t n = std::min<std::uint64_t>(workers, n_chunks);
        pool.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::int64_t sum = 0;
    for (std::uint64_t c = 0; c < n_chunks; ++c) sum += partial[c];
    return sum;
}

// --------------------------------------- F_q[T] helpers (packed-index coeffs)

using FqPoly = std::vector<std::uint64_t>;

inline void fq_trim(FqPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FqPoly fq_mulmod(const FieldSpec& F, const FqPoly& a, const FqPoly& b, const FqPoly& m) {
    if (a.empty() || b.empty()) return {};
    FqPoly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
    std::size_t dm = m.size() - 1; // m monic
    for (std::size_t d = prod.size(); d-- > dm;) {
        std::uint64_t c = prod[d];
        if (!c) continue;
        prod[d] = 0;
        for (std::size_t j = 0; j < dm; ++j)
            prod[d - dm + j] = F.sub(prod[d - dm + j], F.mul(c, m[j]));
    }
    prod.resize(dm);
    fq_trim(prod);
    return prod;
}

inline FqPoly fq_powmod(const FieldSpec& F, FqPoly base, std::uint64_t e, const FqPoly& m) {
    FqPoly r{1};
    while (e) {
        if (e & 1) r = fq_mulmod(F, r, base, m);
        base = fq_mulmod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

inline FqPoly fq_sub(const FieldSpec& F, FqPoly a, const FqPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
    fq_trim(a);
    return a;
}

inline FqPoly fq_mod(const FieldSpec& F, FqPoly a, const FqPoly& b) {
    fq_trim(a);
    std::size_t db = b.size() - 1;
    std::uint64_t lead_inv = F.inv(b.back());
    while (a.size() > db) {
        std::uint64_t fcoef = F.mul(a.back(), lead_inv);
        if (fcoef) {
            std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = F.sub(a[shift + i], F.mul(fcoef, b[i]));
        }
        a.pop_back();
        fq_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline FqPoly fq_gcd(const FieldSpec& F, FqPoly a, FqPoly b) {
    fq_trim(a);
    fq_trim(b);
    while (!b.empty()) {
        FqPoly r = fq_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Irreducible monic quartic over F_q: no factor of degree 1 or 2, verified
// via gcd with x^(q^j) - x, plus the closure check x^(q^4) = x.
inline bool fq_quartic_irreducible(const FieldSpec& F, const FqPoly& m) {
    FqPoly x{0, 1};
    FqPoly z1 = fq_powmod(F, x, F.q, m);             // x^q
    if (fq_gcd(F, m, fq_sub(F, z1, x)).size() > 1) return false;
    FqPoly z2 = fq_powmod(F, z1, F.q, m);            // x^(q^2)
    if (fq_gcd(F, m, fq_sub(F, z2, x)).size() > 1) return false;
    FqPoly z3 = fq_powmod(F, z2, F.q, m);
    FqPoly z4 = fq_powmod(F, z3, F.q, m);            // x^(q^4)
    return fq_sub(F, z4, x).empty();
}

// -------------------------------------------- twisted reduction to a C-grid

using LElem = std::array<std::uint64_t, 4>; // element of L = F_q[z]/(m4)

struct TwistedReduction {
    FqPoly m4;                     // the quartic modulus over F_q
    std::array<LElem, 4> frob_mat; // columns of the matrix of x -> x^q on L
    LElem W0{}, W1{};              // kernel basis of (Frob^2 + 1)
    ChiGrid C;                     // f(x,y) restricted to the subspace, over F_q
};

inline LElem mat_apply(const FieldSpec& F, const std::array<LElem, 4>& M, const LElem& v) {
    LElem r{0, 0, 0, 0};
    for (int c = 0; c < 4; ++c) {
        if (!v[static_cast<std::size_t>(c)]) continue;
        for (int r_i = 0; r_i < 4; ++r_i)
            r[static_cast<std::size_t>(r_i)] =
                F.add(r[static_cast<std::size_t>(r_i)],
                      F.mul(M[static_cast<std::size_t>(c)][static_cast<std::size_t>(r_i)],
                            v[static_cast<std::size_t>(c)]));
    }
    return r;
}

inline LElem lmul(const FieldSpec& F, const LElem& a, const LElem& b, const FqPoly& m4) {
    FqPoly pa(a.begin(), a.end()), pb(b.begin(), b.end());
    fq_trim(pa);
    fq_trim(pb);
    FqPoly pr = fq_mulmod(F, pa, pb, m4);
    LElem r{0, 0, 0, 0};
    for (std::size_t i = 0; i < pr.size(); ++i) r[i] = pr[i];
    return r;
}

// Bivariate polynomial in (u0, u1) with L coefficients, dense grid.
struct UVPoly {
    int d = 0; // max degree per variable
    std::vector<LElem> cells;

    explicit UVPoly(int deg) : d(deg), cells(static_cast<std::size_t>(deg + 1) * (deg + 1), LElem{0, 0, 0, 0}) {}
    LElem& at(int i, int j) { return cells[static_cast<std::size_t>(i) * (d + 1) + static_cast<std::size_t>(j)]; }
    const LElem& at(int i, int j) const {
        return cells[static_cast<std::size_t>(i) * (d + 1) + static_cast<std::size_t>(j)];
    }
};

inline UVPoly uv_mul(const FieldSpec& F, const UVPoly& a, const UVPoly& b, const FqPoly& m4, int dcap) {
    UVPoly r(dcap);
    for (int i = 0; i <= a.d; ++i)
        for (int j = 0; j <= a.d; ++j) {
            const LElem& va = a.at(i, j);
            if (!va[0] && !va[1] && !va[2] && !va[3]) continue;
            for (int s = 0; s <= b.d; ++s)
                for (int t = 0; t <= b.d; ++t) {
                    const LElem& vb = b.at(s, t);
                    if (!vb[0] && !vb[1] && !vb[2] && !vb[3]) continue;
                    LElem prod = lmul(F, va, vb, m4);
                    LElem& dst = r.at(i + s, j + t);
                    for (int c = 0; c < 4; ++c)
                        dst[static_cast<std::size_t>(c)] =
                            F.add(dst[static_cast<std::size_t>(c)], prod[static_cast<std::size_t>(c)]);
                }
        }
    return r;
}

inline TwistedReduction build_twisted_reduction(const FieldSpec& F, const BivarIntPoly& f) {
    TwistedReduction R;

    // Smallest monic irreducible quartic over F_q in the deterministic
    // coefficient enumeration (c_0 = v mod q, c_1 = (v/q) mod q, ...).
    for (std::uint64_t v = 0;; ++v) {
        FqPoly cand(5, 0);
        std::uint64_t w = v;
        for (int i = 0; i < 4; ++i) {
            cand[static_cast<std::size_t>(i)] = w % F.q;
            w /= F.q;
        }
        cand[4] = 1;
        if (fq_quartic_irreducible(F, cand)) {
            R.m4 = cand;
            break;
        }
        if (v > F.q * F.q + 16)
            throw CountingBugError("no irreducible quartic found within the search bound");
    }

    // Matrix of the q-power Frobenius on L in the basis 1, z, z^2, z^3.
    FqPoly zq = fq_powmod(F, FqPoly{0, 1}, F.q, R.m4);
    LElem zq_e{0, 0, 0, 0};
    for (std::size_t i = 0; i < zq.size(); ++i) zq_e[i] = zq[i];
    LElem col{1, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        R.frob_mat[static_cast<std::size_t>(i)] = col;
        if (i < 3) col = lmul(F, col, zq_e, R.m4);
    }

    // A = Frob^2 + I; its kernel is the solution space of x^(q^2) = -x.
    std::array<LElem, 4> M2;
    for (int c = 0; c < 4; ++c)
        M2[static_cast<std::size_t>(c)] = mat_apply(F, R.frob_mat, R.frob_mat[static_cast<std::size_t>(c)]);
    // rows of A as a 4x4 array: A[r][c] = M2[c][r] + delta(r,c)
    std::array<std::array<std::uint64_t, 4>, 4> A{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::uint64_t val = M2[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
            if (r == c) val = F.add(val, 1);
            A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = val;
        }

    // Gaussian elimination with deterministic pivoting.
    std::array<int, 4> pivot_col{-1, -1, -1, -1};
    int rank = 0;
    for (int c = 0; c < 4 && rank < 4; ++c) {
        int pr = -1;
        for (int r = rank; r < 4; ++r)
            if (A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[static_cast<std::size_t>(pr)], A[static_cast<std::size_t>(rank)]);
        std::uint64_t inv = F.inv(A[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
        for (int cc = 0; cc < 4; ++cc)
            A[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)] =
                F.mul(A[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)], inv);
        for (int r = 0; r < 4; ++r) {
            if (r == rank) continue;
            std::uint64_t fr = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (!fr) continue;
            for (int cc = 0; cc < 4; ++cc)
                A[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] =
                    F.sub(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)],
                          F.mul(fr, A[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)]));
        }
        pivot_col[static_cast<std::size_t>(rank)] = c;
        ++rank;
    }
    if (rank != 2)
        throw ModelError("twisted reduction: kernel of Frob^2 + 1 has dimension " + std::to_string(4 - rank) +
                         ", expected 2");

    // basis from the free columns
    std::array<bool, 4> is_pivot{false, false, false, false};
    for (int r = 0; r < rank; ++r) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
    std::array<LElem, 2> basis;
    int nb = 0;
    for (int c = 0; c < 4; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        LElem w{0, 0, 0, 0};
        w[static_cast<std::size_t>(c)] = 1;
        for (int r = 0; r < rank; ++r) {
            int pc = pivot_col[static_cast<std::size_t>(r)];
            w[static_cast<std::size_t>(pc)] = F.neg(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        }
        basis[static_cast<std::size_t>(nb++)] = w;
    }
    R.W0 = basis[0];
    R.W1 = basis[1];

    // verify the kernel property exactly: M2 * W = -W
    for (const LElem& w : {R.W0, R.W1}) {
        LElem mw = mat_apply(F, M2, w);
        for (int c = 0; c < 4; ++c)
            if (mw[static_cast<std::size_t>(c)] != F.neg(w[static_cast<std::size_t>(c)]))
                throw CountingBugError("twisted reduction: kernel basis fails x^(q^2) = -x");
    }

    // X = u0 W0 + u1 W1, Y = X^q = u0 (Mq W0) + u1 (Mq W1)
    LElem Y0 = mat_apply(F, R.frob_mat, R.W0), Y1 = mat_apply(F, R.frob_mat, R.W1);
    const int dcap = f.deg_x() + f.deg_y();
    UVPoly X(dcap), Y(dcap);
    X.at(1, 0) = R.W0;
    X.at(0, 1) = R.W1;
    Y.at(1, 0) = Y0;
    Y.at(0, 1) = Y1;

    int dx = f.deg_x(), dy = f.deg_y();
    std::vector<UVPoly> xp, yp;
    xp.reserve(static_cast<std::size_t>(dx) + 1);
    yp.reserve(static_cast<std::size_t>(dy) + 1);
    UVPoly one(dcap);
    one.at(0, 0) = LElem{1, 0, 0, 0};
    xp.push_back(one);
    for (int i = 1; i <= dx; ++i) xp.push_back(uv_mul(F, xp.back(), X, R.m4, dcap));
    yp.push_back(one);
    for (int j = 1; j <= dy; ++j) yp.push_back(uv_mul(F, yp.back(), Y, R.m4, dcap));

    UVPoly acc(dcap);
    for (const auto& [key, v] : f.t) {
        std::int64_t r = static_cast<std::int64_t>(v % F.p);
        std::uint64_t c = F.scalar(r);
        if (!c) continue;
        UVPoly term = uv_mul(F, xp[static_cast<std::size_t>(key.first)], yp[static_cast<std::size_t>(key.second)],
                             R.m4, dcap);
        for (int i = 0; i <= dcap; ++i)
            for (int j = 0; j <= dcap; ++j) {
                const LElem& e = term.at(i, j);
                LElem& dst = acc.at(i, j);
                for (int cc = 0; cc < 4; ++cc)
                    dst[static_cast<std::size_t>(cc)] =
                        F.add(dst[static_cast<std::size_t>(cc)],
                              F.mul(c, e[static_cast<std::size_t>(cc)]));
            }
    }

    // The collapsed polynomial must have all coefficients in F_q; a
    // violation means the automorphism/Frobenius bookkeeping is wrong and
    // the count would be meaningless, so abort loudly.
    R.C.dx = static_cast<std::uint32_t>(dcap);
    R.C.dy = static_cast<std::uint32_t>(dcap);
    R.C.cells.assign(static_cast<std::size_t>(dcap + 1) * (dcap + 1), 0);
    for (int i = 0; i <= dcap; ++i)
        for (int j = 0; j <= dcap; ++j) {
            const LElem& e = acc.at(i, j);
            if (e[1] || e[2] || e[3])
                throw ModelError("twisted reduction: coefficient of u0^" + std::to_string(i) + " u1^" +
                                 std::to_string(j) + " lies outside F_q (invariance violated)");
            R.C.cells[static_cast<std::size_t>(i) * (dcap + 1) + static_cast<std::size_t>(j)] = e[0];
        }
    return R;
}

} // namespace detail

// Character-evaluation cost of one count record (the budget unit).
inline std::uint64_t count_cost(std::uint32_t p, std::uint32_t k) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (q > (1ull << 62) / p) return ~0ull;
        q *= p;
    }
    if (q > (1ull << 31)) return ~0ull;
    return q * q;
}

inline void check_budget(std::uint32_t p, std::uint32_t k, const CountConfig& cfg) {
    std::uint64_t cost = count_cost(p, k);
    if (cost > cfg.budget) throw BudgetExceeded(cost, cfg.budget);
}

inline void weil_sanity(std::int64_t chi_sum, std::uint64_t q, const std::string& kind) {
    std::int64_t bound = WEIL_SANITY_FACTOR * static_cast<std::int64_t>(q);
    if (chi_sum > bound || chi_sum < -bound)
        throw CountingBugError(kind + " count violates the Weil sanity bound: |deviation| = " +
                               std::to_string(chi_sum > 0 ? chi_sum : -chi_sum) + " > " + std::to_string(bound));
}

inline CountRecord count_straight(const SurfaceModel& model, std::uint32_t p, std::uint32_t k,
                                  const CountConfig& cfg = {}) {
    require_odd_prime(p);
    if (k < 1) throw UsageError("k must be >= 1");
    check_budget(p, k, cfg);
    auto t0 = std::chrono::steady_clock::now();
    FieldSpec F = make_field_any(p, k, /*build_tables=*/!cfg.force_generic);
    detail::ChiGrid g = detail::grid_from_bivar(F, model.f);
    std::int64_t s = detail::chi_sum(F, g, cfg);
    weil_sanity(s, F.q, "straight");
    CountRecord rec;
    rec.p = p;
    rec.k = k;
    rec.kind = "straight";
    rec.count = static_cast<std::int64_t>(F.q) * static_cast<std::int64_t>(F.q) + s;
    rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

inline CountRecord count_twisted(const SurfaceModel& model, std::uint32_t p, std::uint32_t k,
                                 const CountConfig& cfg = {}) {
    require_odd_prime(p);
    if (k < 1) throw UsageError("k must be >= 1");
    check_budget(p, k, cfg);

    if (model.autom == Autom::identity) {
        // Degenerate twist: the fixed points of Frob composed with the
        // identity are exactly the F_q-rational points, i.e. the straight
        // count.
        CountRecord rec = count_straight(model, p, k, cfg);
        rec.kind = "twisted";
        return rec;
    }
    if (model.autom != Autom::phi_standard)
        throw UsageError("twisted counts are defined for the phi automorphism (or the identity degeneration)");

    auto t0 = std::chrono::steady_clock::now();
    FieldSpec F = make_field_any(p, k, /*build_tables=*/!cfg.force_generic);
    detail::TwistedReduction R = detail::build_twisted_reduction(F, model.f);
    std::int64_t s = detail::chi_sum(F, R.C, cfg);
    weil_sanity(s, F.q, "twisted");
    CountRecord rec;
    rec.p = p;
    rec.k = k;
    rec.kind = "twisted";
    rec.count = static_cast<std::int64_t>(F.q) * static_cast<std::int64_t>(F.q) + s;
    rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// A prefix of the (N_k, M_k) series. When a record is infeasible under the
// budget, the result carries everything computed so far plus a typed
// description of the first infeasible record; nothing partial is computed.
struct SeriesFailure {
    std::uint32_t k = 0;
    std::string kind;
    std::uint64_t estimated_cost = 0;
    std::uint64_t budget = 0;
};

struct SeriesResult {
    std::uint32_t p = 0;
    std::vector<CountRecord> straight;
    std::vector<CountRecord> twisted;
    std::optional<SeriesFailure> failure;

    bool complete(std::uint32_t K) const {
        return straight.size() >= K && twisted.size() >= K && !failure;
    }
    std::vector<std::int64_t> straight_counts() const {
        std::vector<std::int64_t> v;
        v.reserve(straight.size());
        for (const auto& r : straight) v.push_back(r.count);
        return v;
    }
    std::vector<std::int64_t> twisted_counts() const {
        std::vector<std::int64_t> v;
        v.reserve(twisted.size());
        for (const auto& r : twisted) v.push_back(r.count);
        return v;
    }
};

inline SeriesResult count_series(const SurfaceModel& model, std::uint32_t p, std::uint32_t K,
                                 const CountConfig& cfg = {}) {
    if (K < 1) throw UsageError("K must be >= 1");
    SeriesResult res;
    res.p = p;
    for (std::uint32_t k = 1; k <= K; ++k) {
        for (const char* kind : {"straight", "twisted"}) {
            try {
                res.failure.reset();
                if (kind[0] == 's') res.straight.push_back(count_straight(model, p, k, cfg));
                else res.twisted.push_back(count_twisted(model, p, k, cfg));
            } catch (const BudgetExceeded& e) {
                res.failure = SeriesFailure{k, kind, e.estimated_cost, e.budget};
                return res;
            }
        }
    }
    return res;
}

} // namespace frv
