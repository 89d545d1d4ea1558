#pragma once

// Spectral solver: recovers the Gaussian-integer trace a_p of the
// interesting rank-3 piece from the straight/twisted count series.
//
// Count model (q = p^k). The eigenvalue content of the straight count at
// level k decomposes as
//
//   N_k = p^{2k}                        (top class)
//       + 2 * (chi2(p) * p)^k           (a 2-dimensional p-power class,
//                                        sign chi2(p) = (2|p))
//       + V_k(t) + V_k(t')              (a pair of elliptic weight-1
//                                        classes; t, t' in {t_E, -t_E})
//       + 2 * Re(s_k)                   (the rank-3 piece)
//
//   M_k = p^{2k} + 2 * sigma * Im(s_k)  (all other classes cancel in the
//                                        twisted series)
//
// where s_k is the k-th power sum of the roots of
//
//   T^3 - a T^2 + chi_m2(p) * p * conj(a) T - chi_m2(p) * p^3,
//
// V_k is the Lucas sequence V_0 = 2, V_1 = t, V_{k+1} = t V_k - p V_{k-1},
// t_E is the trace of the elliptic curve u^2 = v^3 + 2v^2 - v over F_p,
// and sigma = +1 is the global twist orientation, calibrated once at p = 3
// (see twist_orientation() below).
//
// The pinned solver enumerates the three sign hypotheses for the elliptic
// pair, extracts a from k = 1, and forward-checks every candidate against
// the full series, exactly. A second, dictionary-driven solver recovers
// synthetic spectra built from Ramanujan-sum orbit classes; it powers the
// round-trip self-test and the exploratory CLI mode.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "frv/errors.hpp"
#include "frv/gauss.hpp"
#include "frv/nt.hpp"
#include "frv/surface.hpp"

namespace frv {

// Global twist orientation. The raw twisted kernel, as implemented, pairs
// the count deficit with -Im(s_k); solving with that sign at p = 3 yields
// the conjugate 1-2i of the calibration anchor 1+2i. The orientation is
// therefore fixed to +1 once and for all (a global conjugation), and every
// downstream consumer uses this constant. Tests pin both facts.
inline constexpr int twist_orientation() { return 1; }

// Trace of Frobenius of the boundary elliptic curve u^2 = v^3 + 2v^2 - v
// over F_p (good reduction at every odd prime; the trace is always even
// because the curve has full rational 2-torsion).
inline std::int64_t boundary_trace(std::uint32_t p) {
    require_odd_prime(p);
    std::int64_t s = 0;
    for (std::uint64_t v = 0; v < p; ++v) {
        std::uint64_t g = (v % p) * ((v * v + 2 * v + p * static_cast<std::uint64_t>(p) - 1) % p) % p;
        s += legendre(static_cast<std::int64_t>(g), p);
    }
    return -s;
}

// Power sums s_1..s_K of the cubic T^3 - a T^2 + e2 T - e3 with
// e2 = chit * p * conj(a), e3 = chit * p^3, via Newton's identities.
inline std::vector<GaussInt> power_sums(const GaussInt& a, int chit, std::uint32_t p, std::uint32_t K) {
    BigInt P(p);
    GaussInt e2 = GaussInt(chit * P, 0) * a.conj();
    GaussInt e3(chit * P * P * P, 0);
    std::vector<GaussInt> s(K + 1);
    if (K >= 1) s[1] = a;
    if (K >= 2) s[2] = a * s[1] - GaussInt(2, 0) * e2;
    if (K >= 3) s[3] = a * s[2] - e2 * s[1] + GaussInt(3, 0) * e3;
    for (std::uint32_t k = 4; k <= K; ++k) s[k] = a * s[k - 1] - e2 * s[k - 2] + e3 * s[k - 3];
    return s;
}

// Lucas sequence V_0 = 2, V_1 = t, V_{k+1} = t V_k - p V_{k-1} (the power
// sums alpha^k + beta^k for alpha*beta = p, alpha+beta = t).
inline std::vector<BigInt> lucas_v(std::int64_t t, std::uint32_t p, std::uint32_t K) {
    std::vector<BigInt> V(K + 1);
    V[0] = 2;
    if (K >= 1) V[1] = t;
    for (std::uint32_t k = 2; k <= K; ++k) V[k] = BigInt(t) * V[k - 1] - BigInt(p) * V[k - 2];
    return V;
}

struct BoundaryHyp {
    const char* name;
    int sign0, sign1; // elliptic pair traces sign0*t_E, sign1*t_E
};

inline const std::array<BoundaryHyp, 3>& boundary_hypotheses() {
    static const std::array<BoundaryHyp, 3> H{{{"pp", 1, 1}, {"pm", 1, -1}, {"mm", -1, -1}}};
    return H;
}

// Exact forward check of one candidate against the full series under one
// boundary hypothesis.
inline bool forward_check_pinned(const GaussInt& a, const BoundaryHyp& hyp, std::uint32_t p,
                                 const std::vector<std::int64_t>& S, const std::vector<std::int64_t>& T,
                                 int sigma = twist_orientation()) {
    std::uint32_t K = static_cast<std::uint32_t>(std::min(S.size(), T.size()));
    if (K == 0) return true;
    int chit = chi_minus2(p);
    int c2 = chi_two(p);
    std::int64_t tE = boundary_trace(p);
    auto s = power_sums(a, chit, p, K);
    auto V0 = lucas_v(hyp.sign0 * tE, p, K);
    auto V1 = lucas_v(hyp.sign1 * tE, p, K);
    BigInt pk = 1, p2k = 1;
    for (std::uint32_t k = 1; k <= K; ++k) {
        pk *= p;
        p2k *= static_cast<std::uint64_t>(p) * p;
        BigInt uclass = 2 * pk;
        if (c2 < 0 && (k & 1)) uclass = -uclass;
        BigInt predS = p2k + 2 * s[k].re + uclass + V0[k] + V1[k];
        BigInt predT = p2k + 2 * sigma * s[k].im;
        if (predS != S[k - 1] || predT != T[k - 1]) return false;
    }
    return true;
}

struct PinnedCandidate {
    GaussInt a;
    std::vector<std::string> profiles; // boundary hypotheses that fit
};

struct PinnedSolution {
    std::uint32_t p = 0;
    std::uint32_t K = 0;
    std::vector<PinnedCandidate> candidates; // sorted lexicographically by a

    bool unique() const { return candidates.size() == 1; }
};

// Pinned-profile solver (the pipeline default): enumerate the three
// boundary hypotheses, extract a from k = 1, and keep exactly the
// candidates that reproduce both series at every level.
inline PinnedSolution solve_pinned(std::uint32_t p, const std::vector<std::int64_t>& S,
                                   const std::vector<std::int64_t>& T, int sigma = twist_orientation()) {
    require_odd_prime(p);
    if (S.empty() || T.empty()) throw UsageError("solver needs at least the k = 1 counts of both series");
    PinnedSolution sol;
    sol.p = p;
    sol.K = static_cast<std::uint32_t>(std::min(S.size(), T.size()));

    int c2 = chi_two(p);
    std::int64_t tE = boundary_trace(p);
    BigInt p2 = BigInt(p) * p;
    std::map<std::pair<BigInt, BigInt>, std::vector<std::string>> found;

    for (const auto& hyp : boundary_hypotheses()) {
        BigInt ell1 = BigInt(hyp.sign0) * tE + BigInt(hyp.sign1) * tE;
        BigInt two_re = BigInt(S[0]) - p2 - 2 * c2 * BigInt(p) - ell1;
        BigInt two_im = BigInt(T[0]) - p2;
        if (two_re % 2 != 0 || two_im % 2 != 0) continue; // parity violation
        GaussInt a(two_re / 2, sigma * (two_im / 2));
        if (a.norm() > 9 * p2) continue; // Weil bound on a pure rank-3 trace
        if (!forward_check_pinned(a, hyp, p, S, T, sigma)) continue;
        found[{a.re, a.im}].push_back(hyp.name);
    }
    for (auto& [key, profs] : found)
        sol.candidates.push_back(PinnedCandidate{GaussInt(key.first, key.second), std::move(profs)});
    // std::map iterates keys in lexicographic (re, im) order already
    return sol;
}

// ------------------------------------------------------- dictionary solver
//
// Synthetic spectra for the round-trip self-test: a constant class w1 + 1,
// Ramanujan orbit classes m_d * c_d(k) * p^k for d | D, and the rank-3
// piece. The twisted series sees only the constant class and Im(s_k).

struct DictConfig {
    std::uint32_t D = 6;      // divisor bound for orbit classes
    std::uint32_t rmax = 12;  // total orbit dimension bound: sum m_d phi(d) <= rmax
    int w1_min = -1;
    int w1_max = 1;

    void validate(std::uint32_t p, std::uint32_t K) const {
        if (D < 1 || D > 12) throw UsageError("dictionary divisor bound D must be in [1, 12]");
        if (rmax > 32) throw UsageError("dictionary dimension bound rmax must be <= 32");
        if (w1_min > w1_max || w1_min < -4 || w1_max > 4)
            throw UsageError("w1 range must satisfy -4 <= w1_min <= w1_max <= 4");
        if (p > 97 || K > 4)
            throw UsageError("dictionary solver supports p <= 97 and K <= 4 (exact 64-bit range)");
    }
};

struct GI64 {
    std::int64_t re = 0, im = 0;
    friend bool operator==(const GI64& a, const GI64& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator<(const GI64& a, const GI64& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

namespace detail {

inline std::vector<GI64> power_sums_i64(GI64 a, int chit, std::int64_t p, std::uint32_t K) {
    std::int64_t e2r = chit * p * a.re, e2i = -chit * p * a.im;
    std::int64_t e3 = chit * p * p * p;
    std::vector<GI64> s(K + 1);
    auto mul = [](GI64 x, GI64 y) { return GI64{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; };
    if (K >= 1) s[1] = a;
    if (K >= 2) {
        GI64 a2 = mul(a, a);
        s[2] = GI64{a2.re - 2 * e2r, a2.im - 2 * e2i};
    }
    if (K >= 3) {
        GI64 as2 = mul(a, s[2]), e2s1 = mul(GI64{e2r, e2i}, s[1]);
        s[3] = GI64{as2.re - e2s1.re + 3 * e3, as2.im - e2s1.im};
    }
    for (std::uint32_t k = 4; k <= K; ++k) {
        GI64 t1 = mul(a, s[k - 1]), t2 = mul(GI64{e2r, e2i}, s[k - 2]);
        s[k] = GI64{t1.re - t2.re + e3 * s[k - 3].re, t1.im - t2.im + e3 * s[k - 3].im};
    }
    return s;
}

} // namespace detail

// Synthetic count series for a planted spectrum (the generator side of the
// round trip). dict maps divisor d -> multiplicity m_d.
inline void synth_counts(std::uint32_t p, const GI64& a, int w1, const std::map<std::uint32_t, std::uint32_t>& dict,
                         std::uint32_t K, std::vector<std::int64_t>& S_out, std::vector<std::int64_t>& T_out,
                         int sigma = twist_orientation()) {
    int chit = chi_minus2(p);
    auto s = detail::power_sums_i64(a, chit, p, K);
    S_out.assign(K, 0);
    T_out.assign(K, 0);
    std::int64_t pk = 1, p2k = 1;
    for (std::uint32_t k = 1; k <= K; ++k) {
        pk *= p;
        p2k *= static_cast<std::int64_t>(p) * p;
        std::int64_t orbit = 0;
        for (const auto& [d, m] : dict)
            if (m) orbit += static_cast<std::int64_t>(m) * ramanujan_c(d, k);
        S_out[k - 1] = w1 + 1 + p2k + orbit * pk + 2 * s[k].re;
        T_out[k - 1] = w1 + 1 + p2k + 2 * sigma * s[k].im;
    }
}

struct DictCandidate {
    GI64 a;
    int w1 = 0;
    std::map<std::uint32_t, std::uint32_t> dict;
};

struct DictSolution {
    std::vector<DictCandidate> candidates; // sorted by a, one representative dict each
    bool bound_hit_D = false;              // a survivor uses the largest divisor class
    bool bound_hit_r = false;              // a survivor saturates the dimension bound

    bool unique() const { return candidates.size() == 1; }
};

inline DictSolution solve_dict(std::uint32_t p, const std::vector<std::int64_t>& S,
                               const std::vector<std::int64_t>& T, const DictConfig& cfg = {},
                               int sigma = twist_orientation()) {
    require_odd_prime(p);
    if (S.empty() || T.empty()) throw UsageError("solver needs at least the k = 1 counts of both series");
    std::uint32_t K = static_cast<std::uint32_t>(std::min(S.size(), T.size()));
    cfg.validate(p, K);

    std::vector<std::uint64_t> divs = divisors_u64(cfg.D);
    std::vector<std::uint64_t> phis;
    phis.reserve(divs.size());
    for (auto d : divs) phis.push_back(euler_phi_u64(d));

    // Precompute c_d(k) for all divisors and k <= K.
    std::vector<std::vector<std::int64_t>> cdk(divs.size(), std::vector<std::int64_t>(K + 1, 0));
    for (std::size_t i = 0; i < divs.size(); ++i)
        for (std::uint32_t k = 1; k <= K; ++k) cdk[i][k] = ramanujan_c(divs[i], k);

    std::int64_t p2 = static_cast<std::int64_t>(p) * p;
    int chit = chi_minus2(p);
    DictSolution sol;
    std::map<GI64, DictCandidate> found;

    std::vector<std::uint32_t> m(divs.size(), 0);
    // depth-first enumeration of multiplicity vectors with sum m_d phi(d) <= rmax
    auto consider = [&]() {
        std::int64_t orbit1 = 0;
        for (std::size_t i = 0; i < divs.size(); ++i)
            if (m[i]) orbit1 += static_cast<std::int64_t>(m[i]) * cdk[i][1];
        for (int w1 = cfg.w1_min; w1 <= cfg.w1_max; ++w1) {
            std::int64_t two_re = S[0] - w1 - 1 - p2 - orbit1 * p;
            std::int64_t two_im = T[0] - w1 - 1 - p2;
            if (two_re % 2 || two_im % 2) continue;
            GI64 a{two_re / 2, sigma * (two_im / 2)};
            if (a.re * a.re + a.im * a.im > 9 * p2) continue;
            auto s = detail::power_sums_i64(a, chit, p, K);
            bool ok = true;
            std::int64_t pk = p, p2k = p2;
            for (std::uint32_t k = 2; k <= K && ok; ++k) {
                pk *= p;
                p2k *= p2;
                std::int64_t orbitk = 0;
                for (std::size_t i = 0; i < divs.size(); ++i)
                    if (m[i]) orbitk += static_cast<std::int64_t>(m[i]) * cdk[i][k];
                if (w1 + 1 + p2k + orbitk * pk + 2 * s[k].re != S[k - 1]) ok = false;
                else if (w1 + 1 + p2k + 2 * sigma * s[k].im != T[k - 1]) ok = false;
            }
            if (!ok) continue;
            std::uint32_t used = 0;
            for (std::size_t i = 0; i < divs.size(); ++i) used += m[i] * static_cast<std::uint32_t>(phis[i]);
            if (used == cfg.rmax) sol.bound_hit_r = true;
            if (m.back() > 0) sol.bound_hit_D = true;
            std::map<std::uint32_t, std::uint32_t> dict;
            for (std::size_t i = 0; i < divs.size(); ++i)
                if (m[i]) dict[static_cast<std::uint32_t>(divs[i])] = m[i];
            auto it = found.find(a);
            if (it == found.end()) found.emplace(a, DictCandidate{a, w1, std::move(dict)});
        }
    };
    // iterative odometer over the multiplicity lattice
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
        if (i == divs.size()) {
            consider();
            return;
        }
        std::uint32_t cap = (cfg.rmax - used) / static_cast<std::uint32_t>(phis[i]);
        for (std::uint32_t v = 0; v <= cap; ++v) {
            m[i] = v;
            rec(i + 1, used + v * static_cast<std::uint32_t>(phis[i]));
        }
        m[i] = 0;
    };
    rec(0, 0);

    for (auto& [key, cand] : found) {
        (void)key;
        sol.candidates.push_back(std::move(cand));
    }
    return sol;
}

} // namespace frv
