#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frv/gauss.hpp"
#include "frv/surface.hpp"

using namespace frv;

TEST_CASE("gaussian integer arithmetic") {
    GaussInt a(3, -2), b(-1, 4);
    CHECK(a + b == GaussInt(2, 2));
    CHECK(a - b == GaussInt(4, -6));
    CHECK(a * b == GaussInt(5, 14));
    CHECK(a.conj() == GaussInt(3, 2));
    CHECK(a.norm() == 13);
    CHECK((-a) == GaussInt(-3, 2));

    SUBCASE("norm is multiplicative") {
        for (long long xr = -3; xr <= 3; ++xr)
            for (long long xi = -3; xi <= 3; ++xi)
                for (long long yr = -2; yr <= 2; ++yr)
                    for (long long yi = -2; yi <= 2; ++yi) {
                        GaussInt x(xr, xi), y(yr, yi);
                        CHECK((x * y).norm() == x.norm() * y.norm());
                    }
    }

    SUBCASE("string form") {
        CHECK(GaussInt(1, 2).str() == "1+2i");
        CHECK(GaussInt(-7, -10).str() == "-7-10i");
        CHECK(GaussInt(5, 0).str() == "5");
        CHECK(GaussInt(0, 3).str() == "0+3i");
        CHECK(GaussInt(0, 0).str() == "0");
    }

    SUBCASE("lexicographic order") {
        CHECK(GaussInt(1, 2) < GaussInt(3, 2));
        CHECK(GaussInt(1, 2) < GaussInt(1, 3));
        CHECK(!(GaussInt(1, 2) < GaussInt(1, 2)));
    }
}

TEST_CASE("gaussian rational division") {
    GaussRat a(GaussInt(7, -3)), b(GaussInt(2, 5));
    GaussRat q = a / b;
    CHECK(q * b == a);
    CHECK(!q.is_integral());
    GaussRat c = GaussRat(GaussInt(10, 5)) / GaussRat(GaussInt(2, 1));
    CHECK(c.is_integral());
    CHECK(c.to_gauss_int() == GaussInt(5, 0));
}

TEST_CASE("polynomial division and gcd") {
    // the p = 3 cubic splits off T - 3i exactly
    GaussPoly frob3 = poly_expand_shaped(GaussInt(1, 2), 3);
    CHECK(frob3.coeff(0) == GaussRat(GaussInt(-27, 0)));
    CHECK(frob3.coeff(1) == GaussRat(GaussInt(3, -6)));
    CHECK(frob3.coeff(2) == GaussRat(GaussInt(-1, -2)));
    CHECK(frob3.coeff(3) == GaussRat(GaussInt(1, 0)));

    GaussPoly lin = GaussPoly::from_ints({GaussInt(0, -3), GaussInt(1, 0)});
    auto dr = poly_divrem(frob3, lin);
    CHECK(dr.rem.is_zero());
    GaussPoly expect = GaussPoly::from_ints({GaussInt(0, -9), GaussInt(-1, 1), GaussInt(1, 0)});
    CHECK(dr.quot == expect);
    CHECK(poly_exact_div(frob3, lin) == expect);
    CHECK(dr.quot * lin == frob3);

    SUBCASE("exact division refuses a non-divisor") {
        GaussPoly other = GaussPoly::from_ints({GaussInt(1, 0), GaussInt(1, 0)});
        CHECK_THROWS_AS(poly_exact_div(frob3, other), Error);
    }

    SUBCASE("monic gcd") {
        // (T-1)(T-2) and (T-2)(T-3) share exactly T-2
        GaussPoly f = GaussPoly::from_ints({GaussInt(2, 0), GaussInt(-3, 0), GaussInt(1, 0)});
        GaussPoly g = GaussPoly::from_ints({GaussInt(6, 0), GaussInt(-5, 0), GaussInt(1, 0)});
        GaussPoly d = poly_gcd_monic(f, g);
        CHECK(d == GaussPoly::from_ints({GaussInt(-2, 0), GaussInt(1, 0)}));
    }

    SUBCASE("fast T^n mod q") {
        // T^5 mod (T^2 - 1) = T
        GaussPoly m = GaussPoly::from_ints({GaussInt(-1, 0), GaussInt(0, 0), GaussInt(1, 0)});
        GaussPoly r = poly_pow_t_mod(5, m);
        CHECK(r == GaussPoly::from_ints({GaussInt(0, 0), GaussInt(1, 0)}));
        CHECK(poly_pow_t_mod(6, m) == GaussPoly::from_ints({GaussInt(1, 0)}));
    }
}

TEST_CASE("shaped cubic expansion") {
    for (auto [re, im, p] : {std::tuple<long long, long long, std::uint32_t>{1, 2, 3},
                             {-7, -10, 11},
                             {7, 0, 17}}) {
        GaussInt b(re, im);
        GaussPoly poly = poly_expand_shaped(b, p);
        CHECK(poly.degree() == 3);
        CHECK(poly.is_monic());
        CHECK(poly.coeff(2) == GaussRat(-b));
        BigInt P(p);
        CHECK(poly.coeff(1) == GaussRat(GaussInt(P, 0) * b.conj()));
        CHECK(poly.coeff(0) == GaussRat(GaussInt(-P * P * P, 0)));
    }
}

TEST_CASE("bivariate integer polynomials") {
    BivarIntPoly f = SurfaceModel::family_poly(2);
    CHECK(f.deg_x() == 5);
    CHECK(f.deg_y() == 5);
    // f(2,3) = 2*3*(4-1)*(9-1)*(4-9+12) = 1008
    CHECK(f.eval_int(2, 3) == 1008);
    CHECK(base_map_preserves(f, Autom::phi_standard));
    CHECK(base_map_preserves(f, Autom::identity));
    CHECK(!base_map_preserves(f, Autom::swap_xy));

    SUBCASE("the symmetry holds across the whole odd family") {
        for (std::int64_t a = -9; a <= 9; a += 2)
            CHECK(base_map_preserves(SurfaceModel::family_poly(a), Autom::phi_standard));
        // and for the default even value
        CHECK(base_map_preserves(SurfaceModel::family_poly(2), Autom::phi_standard));
    }

    SUBCASE("substitution composes") {
        BivarIntPoly X = BivarIntPoly::x(), Y = BivarIntPoly::y();
        BivarIntPoly g = f.subst(Y, -X); // apply phi
        BivarIntPoly h = g.subst(Y, -X); // phi^2 = (x,y) -> (-x,-y)
        BivarIntPoly k = f.subst(-X, -Y);
        CHECK(h == k);
    }

    SUBCASE("model constructor rejects a broken symmetry") {
        CHECK_THROWS_AS(SurfaceModel::make(2, Autom::swap_xy), ModelError);
        CHECK_NOTHROW(SurfaceModel::make(2, Autom::phi_standard));
        CHECK_NOTHROW(SurfaceModel::make(-5, Autom::phi_standard));
    }
}
