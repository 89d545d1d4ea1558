#pragma once

// Finite fields F_q, q = p^k, p an odd prime.
//
// Elements are packed indices: the element with coordinate vector
// (c_0, ..., c_{k-1}) in the power basis of the chosen modulus has index
// sum c_i * p^i. Index arithmetic below this representation is exact.
//
// Two engines coexist:
//   * a generic coordinate engine (always available, any q),
//   * discrete-log / Zech-logarithm tables (built when q <= TABLE_LIMIT),
//     which the counting kernels use for speed.
// Both compute in the same representation and are cross-checked in tests.

#include <cstdint>
#include <string>
#include <vector>

#include "frv/errors.hpp"
#include "frv/nt.hpp"

namespace frv {

inline constexpr std::uint64_t FIELD_TABLE_LIMIT = 1ull << 24;
inline constexpr std::uint32_t LOG_ZERO = 0xFFFFFFFFu; // sentinel: log of 0
inline constexpr std::uint32_t EXT_DEGREE_LIMIT = 6;   // externally constructible

struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint64_t q = 0;
    // Monic modulus, lowest-degree first, length k+1, coefficients in [0,p).
    std::vector<std::uint32_t> modulus;

    bool has_tables = false;
    std::uint64_t gen_index = 0;        // packed index of the generator
    std::vector<std::uint32_t> log_;    // size q; log_[0] = LOG_ZERO
    std::vector<std::uint32_t> exp_;    // size 2(q-1): exp_[n] = index of g^n, n < 2(q-1)
    std::vector<std::uint32_t> zech_;   // size q-1: zech_[n] = log(1 + g^n), LOG_ZERO if zero
    std::vector<std::int8_t> chi_;      // size q: quadratic character by index

    // ---------------------------------------------------------- coordinates

    void unpack(std::uint64_t idx, std::uint32_t* out) const {
        for (std::uint32_t i = 0; i < k; ++i) {
            out[i] = static_cast<std::uint32_t>(idx % p);
            idx /= p;
        }
    }
    std::uint64_t pack(const std::uint32_t* in) const {
        std::uint64_t idx = 0;
        for (std::uint32_t i = k; i-- > 0;) idx = idx * p + in[i];
        return idx;
    }

    // ------------------------------------------------------ generic engine

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        // digitwise mod-p addition
        std::uint64_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t da = a % p, db = b % p;
            a /= p;
            b /= p;
            std::uint64_t s = da + db;
            if (s >= p) s -= p;
            r += s * mult;
            mult *= p;
        }
        return r;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t r = 0, mult = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t da = a % p, db = b % p;
            a /= p;
            b /= p;
            std::uint64_t s = da + p - db;
            if (s >= p) s -= p;
            r += s * mult;
            mult *= p;
        }
        return r;
    }
    std::uint64_t neg(std::uint64_t a) const { return sub(0, a); }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        // schoolbook product of coordinate vectors, then reduction by the
        // monic modulus
        std::uint32_t ca[32], cb[32];
        std::uint64_t prod[64] = {0};
        unpack(a, ca);
        unpack(b, cb);
        for (std::uint32_t i = 0; i < k; ++i) {
            if (!ca[i]) continue;
            for (std::uint32_t j = 0; j < k; ++j) prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
        }
        for (std::uint32_t d = 2 * k - 2; d >= k && d < 64; --d) {
            std::uint64_t c = prod[d] % p;
            prod[d] = 0;
            if (!c) continue;
            // x^d = x^{d-k} * (x^k mod m) = x^{d-k} * (-(m_0 + ... + m_{k-1} x^{k-1}))
            for (std::uint32_t j = 0; j < k; ++j) {
                std::uint64_t m = modulus[j];
                if (!m) continue;
                // subtract c*m at position d-k+j
                prod[d - k + j] += static_cast<std::uint64_t>(p) * p - (c * m) % p;
            }
        }
        std::uint32_t cr[32];
        for (std::uint32_t i = 0; i < k; ++i) cr[i] = static_cast<std::uint32_t>(prod[i] % p);
        return pack(cr);
    }

    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw Error("inverse of zero in F_q");
        return pow(a, q - 2);
    }

    // Frobenius x -> x^p.
    std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p); }

    // Embed an integer (e.g. a reduced polynomial coefficient) as a scalar.
    std::uint64_t scalar(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        return static_cast<std::uint64_t>(r);
    }

    // Quadratic character: 0 on 0, +1 on nonzero squares, -1 otherwise.
    int quad_char(std::uint64_t a) const {
        if (has_tables) return chi_[a];
        return quad_char_generic(a);
    }
    int quad_char_generic(std::uint64_t a) const {
        if (a == 0) return 0;
        std::uint64_t r = pow(a, (q - 1) / 2);
        if (r == 1) return 1;
        if (r == neg(1)) return -1;
        throw CountingBugError("quadratic character power landed outside {1,-1}");
    }
};

namespace detail {

// Polynomial helpers over F_p with vector<uint32_t> coefficients
// (lowest-degree first), used only for modulus construction.
inline void fp_trim(std::vector<std::uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint32_t> fp_mulmod(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b,
                                            const std::vector<std::uint32_t>& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j] % p;
    }
    // reduce by monic m
    std::size_t dm = m.size() - 1;
    for (std::size_t d = prod.size(); d-- > dm;) {
        std::uint64_t c = prod[d] % p;
        prod[d] = 0;
        if (!c) continue;
        for (std::size_t j = 0; j < dm; ++j)
            prod[d - dm + j] += (static_cast<std::uint64_t>(p) - (c * m[j]) % p);
    }
    std::vector<std::uint32_t> r(dm, 0);
    for (std::size_t i = 0; i < dm && i < prod.size(); ++i) r[i] = static_cast<std::uint32_t>(prod[i] % p);
    fp_trim(r);
    return r;
}

inline std::vector<std::uint32_t> fp_powmod_x(std::uint64_t e, const std::vector<std::uint32_t>& m,
                                              std::uint32_t p) {
    std::vector<std::uint32_t> result{1};
    std::vector<std::uint32_t> base{0, 1};
    if (m.size() <= 2) { // degree-1 modulus: x reduces to a constant
        base = fp_mulmod(base, {1}, m, p);
    }
    while (e) {
        if (e & 1) result = fp_mulmod(result, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

inline std::vector<std::uint32_t> fp_sub(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b,
                                         std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    fp_trim(a);
    return a;
}

inline std::vector<std::uint32_t> fp_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b,
                                         std::uint32_t p) {
    fp_trim(a);
    std::size_t db = b.size() - 1;
    std::uint32_t lead = b.back();
    std::uint64_t lead_inv = powmod_u64(lead, p - 2, p);
    while (a.size() > db) {
        std::uint64_t f = a.back() % p;
        if (f) {
            f = f * lead_inv % p;
            std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + static_cast<std::uint64_t>(p) * p -
                                                           f * b[i] % p) %
                                                          p);
        }
        a.pop_back();
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline std::vector<std::uint32_t> fp_gcd(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                         std::uint32_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        auto r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Irreducibility of a monic degree-k polynomial over F_p.
//
// The reliable criterion: x^(p^k) = x (mod f), and for every prime divisor
// l of k, gcd(x^(p^(k/l)) - x, f) = 1. The second family of conditions is
// essential: omitting it (and checking only that x^(p^(k/l)) - x is nonzero
// mod f) wrongly accepts products of smaller-degree irreducibles whose
// degrees all divide k, e.g. degree 1*2*3 products at k = 6. A regression
// test pins this.
inline bool fp_is_irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    std::size_t kk = f.size() - 1;
    if (kk == 0) return false;
    if (kk == 1) return true;
    std::uint64_t pk = 1;
    for (std::size_t i = 0; i < kk; ++i) pk *= p;
    auto xq = fp_powmod_x(pk, f, p);
    if (fp_sub(xq, {0, 1}, p) != std::vector<std::uint32_t>{}) return false;
    for (auto [l, e] : factorize_u64(kk)) {
        (void)e;
        std::uint64_t pd = 1;
        for (std::size_t i = 0; i < kk / l; ++i) pd *= p;
        auto xd = fp_powmod_x(pd, f, p);
        auto g = fp_gcd(f, fp_sub(xd, {0, 1}, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

// For degree <= 4, an independent exhaustive factor search. Used to
// cross-check the gcd criterion at construction time for small degrees.
inline bool fp_is_irreducible_exhaustive(const std::vector<std::uint32_t>& f, std::uint32_t p) {
    std::size_t kk = f.size() - 1;
    if (kk == 0) return false;
    if (kk == 1) return true;
    // root search kills any linear factor
    for (std::uint32_t r = 0; r < p; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t i = f.size(); i-- > 0;) acc = (acc * r + f[i]) % p;
        if (acc == 0) return false;
    }
    if (kk <= 3) return true;
    if (kk == 4) {
        // no roots; the only remaining reducible shape is (irreducible
        // quadratic) * (irreducible quadratic): trial-divide by all monic
        // quadratics
        for (std::uint32_t b = 0; b < p; ++b)
            for (std::uint32_t c = 0; c < p; ++c) {
                std::vector<std::uint32_t> d{c, b, 1};
                if (fp_mod(f, d, p).empty()) return false;
            }
        return true;
    }
    throw Error("exhaustive irreducibility search is limited to degree <= 4");
}

} // namespace detail

// Internal constructor without the external degree cap; builds tables when
// requested and q is within the table limit.
inline FieldSpec make_field_any(std::uint32_t p, std::uint32_t k, bool build_tables) {
    require_odd_prime(p);
    if (p >= (1u << 16)) throw UsageError("p must be < 2^16");
    if (k == 0) throw UsageError("extension degree must be >= 1");
    FieldSpec F;
    F.p = p;
    F.k = k;
    F.q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        if (F.q > (1ull << 62) / p) throw UsageError("q = p^k overflows the supported range");
        F.q *= p;
    }

    // Lex-smallest monic irreducible modulus: enumerate candidate
    // coefficient vectors (c_0, ..., c_{k-1}) by the integer v = sum c_i p^i
    // ascending, i.e. c_0 = v mod p, c_1 = (v/p) mod p, ...
    if (k == 1) {
        F.modulus = {0, 1}; // x
    } else {
        bool found = false;
        for (std::uint64_t v = 0; v < F.q; ++v) {
            std::vector<std::uint32_t> cand(k + 1, 0);
            std::uint64_t w = v;
            for (std::uint32_t i = 0; i < k; ++i) {
                cand[i] = static_cast<std::uint32_t>(w % p);
                w /= p;
            }
            cand[k] = 1;
            bool irred = detail::fp_is_irreducible(cand, p);
            if (k <= 4) {
                bool irred2 = detail::fp_is_irreducible_exhaustive(cand, p);
                if (irred != irred2)
                    throw CountingBugError("irreducibility criteria disagree at p=" + std::to_string(p) +
                                           " k=" + std::to_string(k));
            }
            if (irred) {
                F.modulus = std::move(cand);
                found = true;
                break;
            }
        }
        if (!found) throw Error("no irreducible modulus found (impossible)");
    }

    if (build_tables && F.q <= FIELD_TABLE_LIMIT) {
        // find a generator of F_q^*
        std::uint64_t order = F.q - 1;
        auto fac = factorize_u64(order);
        std::uint64_t g = 0;
        for (std::uint64_t cand = 2; cand < F.q; ++cand) {
            bool ok = true;
            for (auto [r, e] : fac) {
                (void)e;
                if (F.pow(cand, order / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g = cand;
                break;
            }
        }
        if (!g) throw Error("no multiplicative generator found (impossible)");
        F.gen_index = g;

        F.log_.assign(F.q, LOG_ZERO);
        F.exp_.assign(2 * order, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t n = 0; n < order; ++n) {
            F.exp_[n] = static_cast<std::uint32_t>(cur);
            F.exp_[n + order] = static_cast<std::uint32_t>(cur);
            if (F.log_[cur] != LOG_ZERO) throw CountingBugError("generator has non-maximal order");
            F.log_[cur] = static_cast<std::uint32_t>(n);
            cur = F.mul(cur, g);
        }
        if (cur != 1) throw CountingBugError("generator order mismatch");

        // Zech logarithms: zech[n] = log(1 + g^n). Adding the scalar 1 only
        // touches the lowest base-p digit of the packed index.
        F.zech_.assign(order, 0);
        for (std::uint64_t n = 0; n < order; ++n) {
            std::uint64_t e = F.exp_[n];
            std::uint64_t low = e % p;
            std::uint64_t e1 = e - low + ((low + 1) % p);
            F.zech_[n] = (e1 == 0) ? LOG_ZERO : F.log_[e1];
        }
        // sanity: 1 + g^((q-1)/2) = 1 + (-1) = 0
        if (F.zech_[order / 2] != LOG_ZERO)
            throw CountingBugError("Zech table: g^((q-1)/2) is not -1");

        F.chi_.assign(F.q, 0);
        for (std::uint64_t idx = 1; idx < F.q; ++idx) {
            std::uint32_t n = F.log_[idx];
            F.chi_[idx] = (n & 1) ? -1 : 1;
        }
        F.has_tables = true;
    }
    return F;
}

// Public constructor: odd p < 2^16, 1 <= k <= EXT_DEGREE_LIMIT.
inline FieldSpec field_make(std::uint32_t p, std::uint32_t k) {
    if (k < 1 || k > EXT_DEGREE_LIMIT)
        throw UsageError("extension degree k must satisfy 1 <= k <= " + std::to_string(EXT_DEGREE_LIMIT));
    return make_field_any(p, k, /*build_tables=*/true);
}

} // namespace frv
