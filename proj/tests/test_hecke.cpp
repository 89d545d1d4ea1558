#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "frv/hecke.hpp"

using namespace frv;

#ifndef FRV_SOURCE_DIR
#define FRV_SOURCE_DIR "."
#endif

namespace {

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
    return t;
}

void check_same_rows(const CharPolyTable& a, const CharPolyTable& b) {
    CHECK(a.level == b.level);
    CHECK(a.convention == b.convention);
    REQUIRE(a.rows.size() == b.rows.size());
    for (const auto& [p, entry] : a.rows) {
        REQUIRE(b.rows.count(p) == 1);
        CHECK(entry.readings == b.rows.at(p).readings);
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("tsv round-trip") {
    CharPolyTable t = complete_table();
    std::string text = serialize_hecke_tsv(t);
    CharPolyTable back = parse_hecke_tsv(text);
    check_same_rows(t, back);
    for (const auto& [p, entry] : back.rows)
        CHECK(entry.provenance == Provenance::ingested);

    // a second serialize -> parse cycle is the identity on the text too
    CHECK(serialize_hecke_tsv(back) == text);
}

TEST_CASE("json round-trip") {
    CharPolyTable t = complete_table();
    std::string text = serialize_hecke_json(t);
    CharPolyTable back = parse_hecke_json(text);
    check_same_rows(t, back);
    CHECK(serialize_hecke_json(back) == text);
}

TEST_CASE("ambiguous entries serialize as comments, not rows") {
    CharPolyTable t = builtin_fixture_table();
    std::string text = serialize_hecke_tsv(t);
    CHECK(text.find("# p=11 ambiguous: -7-10i -7+10i") != std::string::npos);
    CHECK(text.find("3\t1\t2") != std::string::npos);
    // parsing back keeps only the unambiguous p = 3 row
    CharPolyTable back = parse_hecke_tsv(text);
    CHECK(back.rows.size() == 1);
    CHECK(back.rows.count(3) == 1);

    // JSON likewise skips the ambiguous entry
    CharPolyTable jback = parse_hecke_json(serialize_hecke_json(t));
    CHECK(jback.rows.size() == 1);
    CHECK(jback.rows.at(3).b() == GaussInt(1, 2));
}

TEST_CASE("tsv parsing") {
    SUBCASE("comments, blank lines, and CRLF are tolerated") {
        std::string text =
            "# leading comment\r\n"
            "\r\n"
            "level=128\tconvention=chi\r\n"
            "# interior comment\n"
            "3\t1\t2\r\n"
            "\n"
            "5\t-1\t-4\n";
        CharPolyTable t = parse_hecke_tsv(text);
        CHECK(t.level == 128);
        CHECK(t.convention == Convention::chi);
        CHECK(t.rows.size() == 2);
        CHECK(t.rows.at(3).b() == GaussInt(1, 2));
        CHECK(t.rows.at(5).b() == GaussInt(-1, -4));
    }

    SUBCASE("empty body with a valid header is an empty table") {
        CharPolyTable t = parse_hecke_tsv("level=128\tconvention=none\n");
        CHECK(t.rows.empty());
        CHECK(t.convention == Convention::none);
    }

    auto expect_error = [](const std::string& text, const std::string& needle, std::size_t line) {
        try {
            parse_hecke_tsv(text);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
            CHECK(e.line == line);
        }
    };

    SUBCASE("header problems") {
        expect_error("3\t1\t2\n", "expected header", 1);
        expect_error("", "missing header", 1);
        expect_error("# only a comment\n", "missing header", 1);
        expect_error("level=128\tconvention=weird\n", "unknown convention 'weird'", 1);
        expect_error("level=0\tconvention=chi\n", "level must be positive", 1);
        expect_error("level=abc\tconvention=chi\n", "not an integer", 1);
        expect_error("level=128 convention=chi\n", "expected header", 1); // space, not tab
    }

    SUBCASE("row problems carry the line number") {
        const std::string hdr = "level=128\tconvention=chi\n";
        expect_error(hdr + "4\t0\t0\n", "odd prime", 2);
        expect_error(hdr + "9\t0\t0\n", "odd prime", 2);
        expect_error(hdr + "-3\t0\t0\n", "odd prime", 2);
        expect_error(hdr + "3\t1\t2\n3\t1\t2\n", "strictly increasing", 3);
        expect_error(hdr + "5\t0\t0\n3\t1\t2\n", "strictly increasing", 3);
        expect_error(hdr + "3\t1\n", "3 tab-separated fields", 2);
        expect_error(hdr + "3\t1\t2\t0\n", "3 tab-separated fields", 2);
        expect_error(hdr + "3\t1x\t2\n", "trailing junk", 2);
        expect_error(hdr + "3\t\t2\n", "empty integer field", 2);
        expect_error(hdr + "3\tone\t2\n", "not an integer", 2);
        expect_error(hdr + "3\t1\t2\n# note\n5\t100\t0\n", "Weil bound", 4);
    }
}

TEST_CASE("json parsing") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_hecke_json(text);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    SUBCASE("well-formed input") {
        CharPolyTable t = parse_hecke_json(
            R"({"level": 128, "convention": "chi", "rows": [{"p": 3, "b": [1, 2]}]})");
        CHECK(t.level == 128);
        CHECK(t.rows.size() == 1);
        CHECK(t.rows.at(3).b() == GaussInt(1, 2));
        CHECK(t.rows.at(3).provenance == Provenance::ingested);
    }

    SUBCASE("malformed input") {
        expect_error("{not json", "invalid JSON");
        expect_error("[]", "requires keys");
        expect_error(R"({"level": 128, "convention": "chi"})", "requires keys");
        expect_error(R"({"level": -1, "convention": "chi", "rows": []})", "level must be");
        expect_error(R"({"level": 128, "convention": 7, "rows": []})", "convention must be");
        expect_error(R"({"level": 128, "convention": "xx", "rows": []})", "unknown convention");
        expect_error(R"({"level": 128, "convention": "chi", "rows": 3})", "must be an array");
        expect_error(R"({"level": 128, "convention": "chi", "rows": [{"p": 3}]})", "row must be");
        expect_error(R"({"level": 128, "convention": "chi", "rows": [{"p": 3, "b": [1]}]})",
                     "row must be");
        expect_error(R"({"level": 128, "convention": "chi", "rows": [{"p": 3, "b": [1, 2, 3]}]})",
                     "row must be");
        expect_error(R"({"level": 128, "convention": "chi", "rows": [{"p": "3", "b": [1, 2]}]})",
                     "row must be");
        expect_error(R"({"level": 128, "convention": "chi", "rows": [{"p": 8, "b": [1, 2]}]})",
                     "odd prime");
        expect_error(
            R"({"level": 128, "convention": "chi", "rows": [{"p": 5, "b": [1, 2]}, {"p": 3, "b": [1, 2]}]})",
            "strictly increasing");
        expect_error(R"({"level": 128, "convention": "chi", "rows": [{"p": 5, "b": [100, 0]}]})",
                     "Weil bound");
    }
}

TEST_CASE("format dispatch") {
    CHECK_NOTHROW(parse_hecke("level=1\tconvention=chi\n", "tsv"));
    CHECK_NOTHROW(parse_hecke(R"({"level": 1, "convention": "chi", "rows": []})", "json"));
    CHECK_THROWS_AS(parse_hecke("", "xml"), UsageError);
}

TEST_CASE("shipped data file") {
    std::string text = slurp(std::string(FRV_SOURCE_DIR) + "/data/hecke_chi_3_67.tsv");
    CharPolyTable t = parse_hecke_tsv(text);
    CHECK(t.level == 128);
    CHECK(t.convention == Convention::chi);
    REQUIRE(t.rows.size() == fixtures::rows().size());
    for (const auto& r : fixtures::rows()) {
        REQUIRE(t.rows.count(r.p) == 1);
        CHECK(!t.rows.at(r.p).ambiguous());
        CHECK(t.rows.at(r.p).b() == GaussInt(r.bRe, r.bIm));
    }
    // every ingested cubic passes the shape check by construction
    for (const auto& [p, entry] : t.rows) CHECK(shape_check(entry.cubic(p), p).ok);
    // parse -> serialize -> parse identity
    check_same_rows(t, parse_hecke_tsv(serialize_hecke_tsv(t)));
    // it is usable as the six-prime user table: all designated primes present
    for (std::uint32_t p : six_prime_policy().designated) CHECK(t.has_unambiguous(p));
}
