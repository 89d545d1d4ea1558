#pragma once

// Frozen reference values for the odd primes 3..67 of the default family
// (a = 2). Every row was cross-checked against the exhaustive enumeration
// oracles in frv/oracle.hpp at the sizes where that is feasible, and the
// count columns obey the exact series identities at every depth the suite
// exercises. Columns:
//   p      odd prime
//   S1,S2  straight counts N_1, N_2
//   T1,T2  twisted counts M_1, M_2
//   a      recovered rank-3 trace (unique at K = 2)
//   b      normalized trace, chi convention
//   tE     boundary elliptic trace
//   roots2 distinct roots of the shaped cubic over the 2-adic completion
//
// The reference annotation marks {3, 11, 19, 47, 61} as the three-distinct-
// root primes; the recomputed column disagrees at p = 61 (see README).

#include <cstdint>
#include <vector>

namespace fixtures {

struct Row {
    std::uint32_t p;
    std::int64_t S1, S2, T1, T2;
    std::int64_t aRe, aIm, bRe, bIm, tE;
    int roots2;
};

inline const std::vector<Row>& rows() {
    static const std::vector<Row> R = {
        {3, 9, 77, 13, 113, 1, 2, 1, 2, 2, 3},
        {5, 21, 653, 33, 561, 1, 4, -1, -4, 2, 0},
        {7, 53, 2445, 41, 2529, -1, -4, 1, 4, -4, 1},
        {11, 81, 15053, 101, 14481, -7, -10, -7, -10, -2, 3},
        {13, 149, 28877, 161, 28753, 1, -4, -1, 4, 2, 0},
        {17, 333, 83661, 289, 83521, 7, 0, 7, 0, -2, 1},
        {19, 329, 130509, 333, 129201, 1, -14, 1, -14, 2, 3},
        {23, 549, 279821, 537, 279201, -17, 4, 17, -4, 4, 1},
        {29, 789, 709837, 865, 706321, 9, 12, -9, -12, -6, 0},
        {31, 1021, 925197, 961, 923521, -1, 0, 1, 0, 0, 1},
        {37, 1365, 1880333, 1313, 1875505, 25, -28, -25, 28, 10, 0},
        {41, 1741, 2829901, 1681, 2825761, -5, 0, -5, 0, -6, 1},
        {43, 1761, 3421901, 1909, 3423121, -7, 30, -7, 30, 6, 1},
        {47, 2253, 4878221, 2129, 4889921, -17, -40, 17, 40, -8, 3},
        {53, 2645, 7891341, 2849, 7884401, -23, 20, 23, -20, -6, 0},
        {59, 3313, 12135757, 3525, 12119121, -39, 22, -39, 22, 14, 1},
        {61, 3477, 13844813, 3681, 13855761, -63, -20, 63, 20, 2, 0},
        {67, 4505, 20150093, 4445, 20139505, 65, -22, 65, -22, 10, 1},
    };
    return R;
}

inline const Row& row(std::uint32_t p) {
    for (const Row& r : rows())
        if (r.p == p) return r;
    throw std::runtime_error("no fixture row for p");
}

// Deeper count fixtures (straight, twisted) for small primes.
struct DeepRow {
    std::uint32_t p, k;
    std::int64_t S, T;
};

inline const std::vector<DeepRow>& deep_rows() {
    static const std::vector<DeepRow> R = {
        {3, 3, 705, 725},
        {3, 4, 6669, 6561},
        {5, 3, 14997, 15521},
        {7, 3, 117125, 117753},
    };
    return R;
}

// The recomputed three-distinct-root census over [3, 67], and the external
// annotation it is compared against. They disagree exactly at 61.
inline const std::vector<std::uint32_t>& computed_census() {
    static const std::vector<std::uint32_t> v = {3, 11, 19, 47};
    return v;
}
inline const std::vector<std::uint32_t>& annotated_census() {
    static const std::vector<std::uint32_t> v = {3, 11, 19, 47, 61};
    return v;
}

} // namespace fixtures
