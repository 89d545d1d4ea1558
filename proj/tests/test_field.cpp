#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frv/field.hpp"

using namespace frv;

TEST_CASE("prime field basics") {
    FieldSpec F = field_make(3, 1);
    CHECK(F.q == 3);
    CHECK(F.modulus == std::vector<std::uint32_t>{0, 1});
    CHECK(F.quad_char(0) == 0);
    CHECK(F.quad_char(1) == 1);
    CHECK(F.quad_char(2) == -1); // 2 is a non-square mod 3
    CHECK(F.add(2, 2) == 1);
    CHECK(F.mul(2, 2) == 1);
    CHECK(F.inv(2) == 2);
}

TEST_CASE("extension moduli are chosen deterministically") {
    CHECK(field_make(3, 2).modulus == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1
    CHECK(field_make(5, 2).modulus == std::vector<std::uint32_t>{2, 0, 1});  // x^2 + 2
    // rebuilding gives the identical spec
    FieldSpec a = field_make(7, 3), b = field_make(7, 3);
    CHECK(a.modulus == b.modulus);
    CHECK(a.gen_index == b.gen_index);
}

TEST_CASE("quadratic character tables") {
    for (auto [p, k] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {5, 2}, {3, 4}, {7, 2}}) {
        FieldSpec F = field_make(p, k);
        REQUIRE(F.has_tables);

        // sum over the field is zero; multiplicativity; squares are +1
        std::int64_t sum = 0;
        for (std::uint64_t x = 0; x < F.q; ++x) sum += F.quad_char(x);
        CHECK(sum == 0);

        for (std::uint64_t x = 1; x < std::min<std::uint64_t>(F.q, 30); ++x) {
            for (std::uint64_t y = 1; y < std::min<std::uint64_t>(F.q, 30); ++y)
                CHECK(F.quad_char(F.mul(x, y)) == F.quad_char(x) * F.quad_char(y));
            CHECK(F.quad_char(F.mul(x, x)) == 1);
        }

        SUBCASE("table agrees with the generic power computation") {
            for (std::uint64_t x = 0; x < F.q; ++x) CHECK(F.quad_char(x) == F.quad_char_generic(x));
        }

        SUBCASE("zech log of -1") {
            // g^{(q-1)/2} = -1, so 1 + g^{(q-1)/2} = 0
            CHECK(F.zech_[(F.q - 1) / 2] == LOG_ZERO);
        }
    }
}

TEST_CASE("frobenius") {
    FieldSpec F = field_make(3, 2);
    // fixes exactly the prime subfield
    std::uint32_t fixed = 0;
    for (std::uint64_t x = 0; x < F.q; ++x) {
        if (F.frobenius(x) == x) ++fixed;
        CHECK(F.frobenius(F.frobenius(x)) == x); // order 2 on F_9
    }
    CHECK(fixed == 3);
}

TEST_CASE("irreducibility: the weak fixed-point test is not sufficient") {
    // f = (x+1)(x^2+1)(x^3+2x+1) over F_3 expands to x^6 + x^5 + x^3 + 1.
    // Every factor degree divides 6, so x^(3^6) == x mod f even though f
    // is reducible; the order tests below the top exponent must catch it.
    std::vector<std::uint32_t> f = {1, 0, 0, 1, 0, 1, 1};

    // the weak criterion alone accepts f ...
    std::uint64_t q6 = 1;
    for (int i = 0; i < 6; ++i) q6 *= 3;
    auto xq = detail::fp_powmod_x(q6, f, 3);
    CHECK(xq == std::vector<std::uint32_t>{0, 1});

    // ... the real test rejects it
    CHECK(!detail::fp_is_irreducible(f, 3));

    // and the modulus actually selected for F_{3^6} passes both
    FieldSpec F = make_field_any(3, 6, /*build_tables=*/false);
    CHECK(detail::fp_is_irreducible(F.modulus, 3));
}

TEST_CASE("exhaustive and subfield criteria agree on small degrees") {
    for (std::uint32_t p : {3u, 5u}) {
        for (std::uint32_t k : {2u, 3u}) {
            // scan all monic polynomials of degree k
            std::uint64_t n = 1;
            for (std::uint32_t i = 0; i < k; ++i) n *= p;
            for (std::uint64_t v = 0; v < n; ++v) {
                std::vector<std::uint32_t> f(k + 1, 0);
                std::uint64_t t = v;
                for (std::uint32_t i = 0; i < k; ++i) {
                    f[i] = static_cast<std::uint32_t>(t % p);
                    t /= p;
                }
                f[k] = 1;
                CHECK(detail::fp_is_irreducible(f, p) == detail::fp_is_irreducible_exhaustive(f, p));
            }
        }
    }
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(field_make(2, 1), UsageError);
    CHECK_THROWS_AS(field_make(9, 1), UsageError);
    CHECK_THROWS_AS(field_make(3, 0), UsageError);
    CHECK_THROWS_AS(field_make(3, 7), UsageError);
    CHECK_NOTHROW(field_make(3, 6));
}

TEST_CASE("generic engine matches tables") {
    FieldSpec T = make_field_any(5, 2, true);
    FieldSpec G = make_field_any(5, 2, false);
    REQUIRE(T.modulus == G.modulus);
    for (std::uint64_t x = 0; x < T.q; ++x) {
        CHECK(T.quad_char(x) == G.quad_char(x));
        for (std::uint64_t y = 0; y < T.q; ++y) {
            CHECK(T.mul(x, y) == G.mul(x, y));
            CHECK(T.add(x, y) == G.add(x, y));
        }
    }
}
