#pragma once

// Small elementary number theory helpers shared across modules.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "frv/errors.hpp"

namespace frv {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // deterministic Miller-Rabin for 64-bit integers
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

// Prime factorization by trial division; adequate for the 64-bit sizes used
// here (q - 1 for table-backed fields, divisor lattices, etc.).
inline std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<std::uint64_t> divisors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize_u64(n)) {
        std::size_t cur = out.size();
        std::uint64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < cur; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::uint64_t euler_phi_u64(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : factorize_u64(n)) { (void)e; r -= r / p; }
    return r;
}

inline int moebius_u64(std::uint64_t n) {
    int sign = 1;
    for (auto [p, e] : factorize_u64(n)) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

// Legendre symbol (a | p) for odd prime p; returns -1, 0, +1.
inline int legendre(std::int64_t a, std::uint32_t p) {
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    if (r == 0) return 0;
    std::uint64_t v = powmod_u64(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
    return v == 1 ? 1 : -1;
}

// Quadratic character of 2 mod p: +1 iff p = +-1 (mod 8).
inline int chi_two(std::uint32_t p) {
    std::uint32_t r = p % 8;
    return (r == 1 || r == 7) ? 1 : -1;
}

// Quadratic character of -2 mod p: +1 iff p = 1 or 3 (mod 8).
inline int chi_minus2(std::uint32_t p) {
    std::uint32_t r = p % 8;
    return (r == 1 || r == 3) ? 1 : -1;
}

// Ramanujan sum c_d(k): sum of k-th powers of the primitive d-th roots of
// unity. Integer-valued: c_d(k) = mu(d/g) * phi(d) / phi(d/g), g = gcd(d,k).
inline std::int64_t ramanujan_c(std::uint64_t d, std::uint64_t k) {
    std::uint64_t g = std::gcd(d, k);
    std::uint64_t m = d / g;
    int mu = moebius_u64(m);
    if (mu == 0) return 0;
    return static_cast<std::int64_t>(mu) *
           static_cast<std::int64_t>(euler_phi_u64(d) / euler_phi_u64(m));
}

inline void require_odd_prime(std::uint32_t p) {
    if (p == 2) throw UsageError("p = 2 is a bad prime for this family and is rejected");
    if (!is_prime_u64(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
}

} // namespace frv
