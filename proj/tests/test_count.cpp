#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "frv/oracle.hpp"
#include "frv/surface.hpp"

using namespace frv;

namespace {
CountConfig one_worker() {
    CountConfig c;
    c.workers = 1;
    return c;
}
} // namespace

TEST_CASE("straight and twisted counts match the frozen table at k = 1") {
    SurfaceModel m = SurfaceModel::make();
    for (const auto& r : fixtures::rows()) {
        CHECK(count_straight(m, r.p, 1, one_worker()).count == r.S1);
        CHECK(count_twisted(m, r.p, 1, one_worker()).count == r.T1);
    }
}

TEST_CASE("k = 2 counts match the frozen table") {
    SurfaceModel m = SurfaceModel::make();
    for (const auto& r : fixtures::rows()) {
        if (r.p > 23) continue; // the full range is covered by the acceptance run
        CHECK(count_straight(m, r.p, 2, one_worker()).count == r.S2);
        CHECK(count_twisted(m, r.p, 2, one_worker()).count == r.T2);
    }
}

TEST_CASE("deep counts at small primes") {
    SurfaceModel m = SurfaceModel::make();
    for (const auto& d : fixtures::deep_rows()) {
        CHECK(count_straight(m, d.p, d.k, one_worker()).count == d.S);
        CHECK(count_twisted(m, d.p, d.k, one_worker()).count == d.T);
    }
}

TEST_CASE("twist by the identity degenerates to the straight count") {
    SurfaceModel m = SurfaceModel::make(2, Autom::identity);
    CountRecord r = count_twisted(m, 3, 1, one_worker());
    CHECK(r.count == 9);
    CHECK(r.kind == "twisted");
    CHECK(count_straight(m, 3, 1, one_worker()).count == 9);
}

TEST_CASE("exhaustive oracles agree with the character-sum kernel") {
    SurfaceModel m = SurfaceModel::make();
    for (std::uint32_t p : {3u, 5u}) {
        for (std::uint32_t k : {1u, 2u})
            CHECK(oracle::naive_straight(m, p, k) == count_straight(m, p, k, one_worker()).count);
        CHECK(oracle::naive_twisted(m, p, 1) == count_twisted(m, p, 1, one_worker()).count);
    }
    CHECK(oracle::naive_twisted(m, 3, 2) == count_twisted(m, 3, 2, one_worker()).count);
}

TEST_CASE("counts are deterministic across workers and chunk sizes") {
    SurfaceModel m = SurfaceModel::make();
    CountConfig base = one_worker();
    std::int64_t want_s = count_straight(m, 13, 2, base).count;
    std::int64_t want_t = count_twisted(m, 13, 2, base).count;

    for (std::uint32_t workers : {2u, 3u, 5u}) {
        CountConfig c = base;
        c.workers = workers;
        CHECK(count_straight(m, 13, 2, c).count == want_s);
        CHECK(count_twisted(m, 13, 2, c).count == want_t);
    }
    for (std::uint64_t chunk : {1ull, 7ull, 169ull, 1000ull}) {
        CountConfig c = base;
        c.chunk = chunk;
        CHECK(count_straight(m, 13, 2, c).count == want_s);
    }
    SUBCASE("forcing the generic engine changes nothing") {
        CountConfig c = base;
        c.force_generic = true;
        CHECK(count_straight(m, 13, 2, c).count == want_s);
        CHECK(count_twisted(m, 13, 2, c).count == want_t);
    }
}

TEST_CASE("budget refusals are typed and precede all work") {
    SurfaceModel m = SurfaceModel::make();
    CountConfig c = one_worker();
    c.budget = 1000;

    CHECK_THROWS_AS(count_straight(m, 31, 4, c), BudgetExceeded);
    try {
        count_straight(m, 31, 2, c); // 31^4 = 923521 > 1000
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.estimated_cost == 923521u);
        CHECK(e.budget == 1000u);
    }

    SUBCASE("series stop at the first infeasible record with a typed failure") {
        c.budget = 1000; // covers 31^2 = 961 but not 31^4
        SeriesResult sr = count_series(m, 31, 3, c);
        REQUIRE(sr.failure.has_value());
        CHECK(sr.failure->k == 2);
        CHECK(sr.failure->kind == "straight");
        CHECK(sr.failure->estimated_cost == 923521u);
        CHECK(sr.straight.size() == 1);
        CHECK(sr.twisted.size() == 1);
        CHECK(!sr.complete(3));
        CHECK(sr.straight_counts() == std::vector<std::int64_t>{fixtures::row(31).S1});
    }

    SUBCASE("a sufficient budget completes") {
        c.budget = DEFAULT_BUDGET;
        SeriesResult sr = count_series(m, 31, 2, c);
        CHECK(sr.complete(2));
        CHECK(!sr.failure.has_value());
    }
}

TEST_CASE("input guards") {
    SurfaceModel m = SurfaceModel::make();
    CHECK_THROWS_AS(count_straight(m, 2, 1, one_worker()), UsageError);
    CHECK_THROWS_AS(count_straight(m, 15, 1, one_worker()), UsageError);
    CHECK_THROWS_AS(count_straight(m, 3, 0, one_worker()), UsageError);
    CHECK_THROWS_AS(count_series(m, 3, 0, one_worker()), UsageError);
}

TEST_CASE("other odd family members count consistently") {
    // the series identities do not depend on a = 2; spot-check that the
    // kernel and the exhaustive oracle agree on a neighbouring member
    SurfaceModel m = SurfaceModel::make(4);
    CHECK(oracle::naive_straight(m, 3, 1) == count_straight(m, 3, 1, one_worker()).count);
    CHECK(oracle::naive_twisted(m, 3, 1) == count_twisted(m, 3, 1, one_worker()).count);
    SurfaceModel m3 = SurfaceModel::make(-3);
    CHECK(oracle::naive_straight(m3, 5, 1) == count_straight(m3, 5, 1, one_worker()).count);
    CHECK(oracle::naive_twisted(m3, 5, 1) == count_twisted(m3, 5, 1, one_worker()).count);
}
