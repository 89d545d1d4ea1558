#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "frv/compare.hpp"
#include "frv/hecke.hpp"

using namespace frv;

namespace {

// Complete unambiguous table over [3, 67] (chi convention), as an external
// data supplier would provide it.
CharPolyTable complete_table() {
    CharPolyTable t;
    t.level = 128;
    t.convention = Convention::chi;
    for (const auto& r : fixtures::rows()) {
        TableEntry e;
        e.readings = {GaussInt(r.bRe, r.bIm)};
        e.provenance = Provenance::ingested;
        t.rows.emplace(r.p, e);
    }
    t.annotation_distinct_root_primes = builtin_fixture_table().annotation_distinct_root_primes;
    return t;
}

CharPolyTable perturbed(std::uint32_t p, const GaussInt& delta = GaussInt(1, 0)) {
    CharPolyTable t = complete_table();
    GaussInt b = t.rows.at(p).b();
    t.rows.at(p).readings = {b + delta};
    return t;
}

} // namespace

TEST_CASE("policy validation") {
    CHECK_NOTHROW(six_prime_policy().validate());
    CHECK(six_prime_policy().designated == std::vector<std::uint32_t>{5, 7, 11, 17, 23, 31});
    ComparisonPolicy bad = six_prime_policy();
    bad.designated = {2, 5, 7};
    CHECK_THROWS_AS(bad.validate(), UsageError);
    CHECK_THROWS_AS(six_prime_compare(complete_table(), complete_table(), bad), UsageError);
}

TEST_CASE("builtin fixture table") {
    CharPolyTable t = builtin_fixture_table();
    CHECK(t.level == 128);
    CHECK(t.convention == Convention::chi);
    // only the two pinned primes are stored; everything else is absent
    CHECK(t.rows.size() == 2);
    CHECK(t.rows.count(7) == 0);
    REQUIRE(t.rows.count(3) == 1);
    CHECK(!t.rows.at(3).ambiguous());
    CHECK(t.rows.at(3).b() == GaussInt(1, 2));
    CHECK(t.rows.at(3).provenance == Provenance::fixture);
    // the p = 11 entry keeps both conjugate readings: the sign of the
    // imaginary part is resolved by the pipeline, not by the fixture
    REQUIRE(t.rows.count(11) == 1);
    CHECK(t.rows.at(11).ambiguous());
    CHECK(t.rows.at(11).readings ==
          std::vector<GaussInt>{GaussInt(-7, -10), GaussInt(-7, 10)});
    CHECK(!t.has_unambiguous(11));
    CHECK(t.has_unambiguous(3));
    CHECK(t.annotation_distinct_root_primes == fixtures::annotated_census());
}

TEST_CASE("six-prime verdicts") {
    const CharPolyTable base = complete_table();

    SUBCASE("reflexive equivalence") {
        Verdict v = six_prime_compare(base, base);
        CHECK(v.kind == VerdictKind::equivalent);
        CHECK(v.name() == "Equivalent");
        CHECK(!v.witness.has_value());
        CHECK(v.missing.empty());
    }

    SUBCASE("a mismatch at any designated prime is witnessed") {
        for (std::uint32_t p : six_prime_policy().designated) {
            Verdict v = six_prime_compare(base, perturbed(p));
            CHECK(v.kind == VerdictKind::distinct);
            CHECK(v.name() == "Distinct");
            REQUIRE(v.witness.has_value());
            CHECK(*v.witness == p);
            CHECK(v.reason == "characteristic polynomials differ at p = " + std::to_string(p));
        }
    }

    SUBCASE("the verdict only consults designated primes") {
        CHECK(six_prime_compare(base, perturbed(37)).kind == VerdictKind::equivalent);
        CHECK(six_prime_compare(perturbed(3), base).kind == VerdictKind::equivalent);
    }

    SUBCASE("a missing designated prime yields Insufficient") {
        CharPolyTable t = base;
        t.rows.erase(7);
        Verdict v = six_prime_compare(base, t);
        CHECK(v.kind == VerdictKind::insufficient);
        CHECK(v.name() == "Insufficient");
        CHECK(v.missing == std::vector<std::uint32_t>{7});
    }

    SUBCASE("an ambiguous designated prime yields Insufficient") {
        CharPolyTable t = base;
        t.rows.at(11).readings = {GaussInt(-7, -10), GaussInt(-7, 10)};
        Verdict v = six_prime_compare(t, base);
        CHECK(v.kind == VerdictKind::insufficient);
        CHECK(v.missing == std::vector<std::uint32_t>{11});
    }

    SUBCASE("the builtin fixture alone cannot support a verdict") {
        Verdict v = six_prime_compare(complete_table(), builtin_fixture_table());
        CHECK(v.kind == VerdictKind::insufficient);
        // 11 is present but ambiguous; the other five designated primes are absent
        CHECK(v.missing == six_prime_policy().designated);
    }

    SUBCASE("missing data outranks a mismatch elsewhere") {
        CharPolyTable t = perturbed(5);
        t.rows.erase(7);
        Verdict v = six_prime_compare(base, t);
        CHECK(v.kind == VerdictKind::insufficient);
        CHECK(v.missing == std::vector<std::uint32_t>{7});
    }

    SUBCASE("a mismatch outranks metadata problems") {
        CharPolyTable t = perturbed(17);
        t.declared_dimension = 5;
        Verdict v = six_prime_compare(base, t);
        CHECK(v.kind == VerdictKind::distinct);
        REQUIRE(v.witness.has_value());
        CHECK(*v.witness == 17);
    }

    SUBCASE("metadata violations yield HypothesisUnmet") {
        CharPolyTable t = base;
        t.declared_dimension = 5;
        Verdict v = six_prime_compare(base, t);
        CHECK(v.kind == VerdictKind::hypothesis_unmet);
        CHECK(v.name() == "HypothesisUnmet");
        CHECK(v.reason.find("dimension") != std::string::npos);
        CHECK(v.reason.find("declared n = 5") != std::string::npos);

        t = base;
        t.declared_ram = {2, 3};
        v = six_prime_compare(t, base);
        CHECK(v.kind == VerdictKind::hypothesis_unmet);
        CHECK(v.reason.find("ramification") != std::string::npos);
        CHECK(v.reason.find("{3}") != std::string::npos);

        t = base;
        t.declared_semisimple = false;
        CHECK(six_prime_compare(base, t).kind == VerdictKind::hypothesis_unmet);

        t = base;
        t.declared_abs_irreducible = false;
        CHECK(six_prime_compare(base, t).kind == VerdictKind::hypothesis_unmet);

        t = base;
        t.field_descriptor = "Q(sqrt(-2)), place above 2";
        v = six_prime_compare(base, t);
        CHECK(v.kind == VerdictKind::hypothesis_unmet);
        CHECK(v.reason.find("coefficient_field") != std::string::npos);
    }

    SUBCASE("different trace conventions yield HypothesisUnmet") {
        CharPolyTable t = base;
        t.convention = Convention::none;
        Verdict v = six_prime_compare(base, t);
        CHECK(v.kind == VerdictKind::hypothesis_unmet);
        CHECK(v.reason == "tables use different trace conventions");
    }
}

TEST_CASE("hypothesis ledger") {
    // the builtin fixture supplies the declared metadata and must come out
    // all satisfied-or-declared, including the shape of both p = 11 readings
    HypothesisLedger led = hypothesis_ledger(builtin_fixture_table(), six_prime_policy());
    REQUIRE(led.items.size() == 6);
    CHECK(led.all_ok());

    auto find = [&](const std::string& name) -> const LedgerItem& {
        for (const auto& it : led.items)
            if (it.name == name) return it;
        REQUIRE(false);
        return led.items.front();
    };
    CHECK(find("dimension").status == LedgerStatus::satisfied);
    CHECK(find("ramification").status == LedgerStatus::satisfied);
    CHECK(find("coefficient_field").status == LedgerStatus::satisfied);
    // not provable from finitely many local polynomials: stays declared
    CHECK(find("semisimple").status == LedgerStatus::declared);
    CHECK(find("absolutely_irreducible").status == LedgerStatus::declared);
    CHECK(find("entry_shape").status == LedgerStatus::satisfied);

    SUBCASE("the complete table is also clean") {
        CHECK(hypothesis_ledger(complete_table(), six_prime_policy()).all_ok());
    }

    SUBCASE("declared items count as ok, violated ones do not") {
        CharPolyTable t = builtin_fixture_table();
        t.declared_semisimple = false;
        HypothesisLedger bad = hypothesis_ledger(t, six_prime_policy());
        CHECK(!bad.all_ok());
    }

    SUBCASE("dimension 4 is admissible under the policy") {
        CharPolyTable t = complete_table();
        t.declared_dimension = 4;
        CHECK(hypothesis_ledger(t, six_prime_policy()).all_ok());
        t.declared_dimension = 2;
        CHECK(!hypothesis_ledger(t, six_prime_policy()).all_ok());
    }
}

TEST_CASE("table entries") {
    TableEntry e;
    e.readings = {GaussInt(1, 2)};
    CHECK(!e.ambiguous());
    CHECK(e.b() == GaussInt(1, 2));
    CHECK(shape_check(e.cubic(3), 3).ok);

    e.readings = {GaussInt(1, 2), GaussInt(1, -2)};
    CHECK(e.ambiguous());
    CHECK_THROWS_AS(e.b(), Error);

    e.readings = {};
    CHECK(e.ambiguous());

    CHECK(std::string(provenance_name(Provenance::computed)) == "computed");
    CHECK(std::string(provenance_name(Provenance::ingested)) == "ingested");
    CHECK(std::string(provenance_name(Provenance::fixture)) == "fixture");
}

TEST_CASE("distinct-root census") {
    const CharPolyTable base = complete_table();

    SUBCASE("full range census matches the recomputed column") {
        CensusResult res = distinct_root_census(base, 3, 67);
        CHECK(res.census == fixtures::computed_census());
        CHECK(res.failures.empty());
        for (const auto& r : fixtures::rows()) {
            REQUIRE(res.root_counts.count(r.p) == 1);
            CHECK(res.root_counts.at(r.p) == r.roots2);
        }
        CHECK(res.root_counts.size() == fixtures::rows().size());
    }

    SUBCASE("conjugate-ambiguous entries still contribute") {
        CharPolyTable t = base;
        t.rows.at(11).readings = {GaussInt(-7, -10), GaussInt(-7, 10)};
        CensusResult res = distinct_root_census(t, 3, 67);
        CHECK(res.census == fixtures::computed_census());
        CHECK(res.root_counts.at(11) == 3);
        CHECK(res.failures.empty());
    }

    SUBCASE("the builtin's own primes can be censused") {
        CharPolyTable t = builtin_fixture_table();
        CensusResult at3 = distinct_root_census(t, 3, 3);
        CHECK(at3.census == std::vector<std::uint32_t>{3});
        // ambiguous p = 11: both readings agree the count is 3
        CensusResult at11 = distinct_root_census(t, 11, 11);
        CHECK(at11.census == std::vector<std::uint32_t>{11});
        CHECK(at11.failures.empty());
        // but the builtin does not cover the primes in between
        CHECK_THROWS_AS(distinct_root_census(t, 3, 11), CoverageError);
    }

    SUBCASE("readings that disagree on the count are recorded as failures") {
        // b = 0 at p = 3 gives T^3 - 27, whose only root in the completion
        // is 3 itself (the cube roots of unity are not in the field)
        REQUIRE(roots_in_q2i(poly_expand_shaped(GaussInt(0, 0), 3)) == 1);
        CharPolyTable t = base;
        t.rows.at(3).readings = {GaussInt(1, 2), GaussInt(0, 0)};
        CensusResult res = distinct_root_census(t, 3, 67);
        REQUIRE(res.failures.count(3) == 1);
        CHECK(res.root_counts.count(3) == 0);
        // 3 dropped from the census; the rest is unaffected
        CHECK(res.census == std::vector<std::uint32_t>{11, 19, 47});
    }

    SUBCASE("partial ranges") {
        CensusResult res = distinct_root_census(base, 3, 13);
        CHECK(res.census == std::vector<std::uint32_t>{3, 11});
        CHECK(res.root_counts.size() == 5);
    }

    SUBCASE("coverage is enforced up front") {
        CHECK_THROWS_WITH_AS(distinct_root_census(base, 3, 71),
                             doctest::Contains("missing primes: 71"), CoverageError);
        CHECK_THROWS_AS(distinct_root_census(base, 67, 3), UsageError);
    }

    SUBCASE("the external annotation disagrees exactly at 61") {
        // the annotation lists 61; recomputation does not reproduce it
        std::vector<std::uint32_t> ann = base.annotation_distinct_root_primes;
        CHECK(ann == fixtures::annotated_census());
        CensusResult res = distinct_root_census(base, 3, 67);
        std::vector<std::uint32_t> extra;
        for (std::uint32_t p : ann)
            if (std::find(res.census.begin(), res.census.end(), p) == res.census.end())
                extra.push_back(p);
        CHECK(extra == std::vector<std::uint32_t>{61});
        std::vector<std::uint32_t> missing_from_ann;
        for (std::uint32_t p : res.census)
            if (std::find(ann.begin(), ann.end(), p) == ann.end()) missing_from_ann.push_back(p);
        CHECK(missing_from_ann.empty());
    }
}
