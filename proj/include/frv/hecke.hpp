#pragma once

// Ingestion and serialization of externally supplied characteristic-
// polynomial tables (the b_p data), plus the built-in fixture table used
// by the tests and the census cross-check.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frv/compare.hpp"
#include "frv/errors.hpp"
#include "frv/gauss.hpp"
#include "frv/nt.hpp"

namespace frv {

namespace detail {

inline void hecke_weil_check(std::uint32_t p, const GaussInt& b, std::size_t line) {
    // |b|^2 <= 9p^2 is forced for a trace of three Weil numbers of weight 2.
    if (b.norm() > BigInt(9) * BigInt(p) * BigInt(p))
        throw ParseError("row violates the Weil bound |b|^2 <= 9p^2", line, 1);
}

inline long long hecke_parse_int(const std::string& tok, std::size_t line, std::size_t col) {
    if (tok.empty()) throw ParseError("empty integer field", line, col);
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("field is not an integer: '" + tok + "'", line, col);
    }
    if (pos != tok.size()) throw ParseError("trailing junk in integer field: '" + tok + "'", line, col);
    return v;
}

} // namespace detail

// Tab-separated format:
//   # comment lines anywhere
//   level=<N>\tconvention=<chi|none>          (header, first non-comment line)
//   <p>\t<b_re>\t<b_im>                       (data rows, strictly increasing odd primes)
inline CharPolyTable parse_hecke_tsv(const std::string& text) {
    CharPolyTable table;
    bool saw_header = false;
    std::uint32_t last_p = 0;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string line = raw;
        if (line.empty()) continue;
        if (line[0] == '#') continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }

        if (!saw_header) {
            if (fields.size() != 2 || fields[0].rfind("level=", 0) != 0 ||
                fields[1].rfind("convention=", 0) != 0)
                throw ParseError("expected header 'level=<N>\\tconvention=<chi|none>'", lineno, 1);
            long long lvl = detail::hecke_parse_int(fields[0].substr(6), lineno, 1);
            if (lvl <= 0) throw ParseError("level must be positive", lineno, 1);
            table.level = static_cast<std::uint32_t>(lvl);
            std::string conv = fields[1].substr(11);
            if (conv == "chi") table.convention = Convention::chi;
            else if (conv == "none") table.convention = Convention::none;
            else throw ParseError("unknown convention '" + conv + "'", lineno, 2);
            saw_header = true;
            continue;
        }

        if (fields.size() != 3)
            throw ParseError("expected 3 tab-separated fields (p, b_re, b_im)", lineno, 1);
        long long pv = detail::hecke_parse_int(fields[0], lineno, 1);
        long long re = detail::hecke_parse_int(fields[1], lineno, 2);
        long long im = detail::hecke_parse_int(fields[2], lineno, 3);
        if (pv < 3 || pv > 0xFFFFFFFFll || !is_prime_u64(static_cast<std::uint64_t>(pv)) || pv % 2 == 0)
            throw ParseError("p must be an odd prime", lineno, 1);
        auto p = static_cast<std::uint32_t>(pv);
        if (p <= last_p) throw ParseError("primes must be strictly increasing", lineno, 1);
        last_p = p;

        GaussInt b{BigInt(re), BigInt(im)};
        detail::hecke_weil_check(p, b, lineno);
        TableEntry entry;
        entry.readings = {b};
        entry.provenance = Provenance::ingested;
        table.rows.emplace(p, entry);
    }
    if (!saw_header) throw ParseError("missing header line", lineno == 0 ? 1 : lineno, 1);
    return table;
}

// JSON format: {"level": N, "convention": "chi"|"none",
//               "rows": [{"p": 3, "b": [1, 2]}, ...]}
inline CharPolyTable parse_hecke_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 1, 1);
    }
    if (!j.is_object() || !j.contains("level") || !j.contains("convention") || !j.contains("rows"))
        throw ParseError("JSON table requires keys level, convention, rows", 1, 1);
    CharPolyTable table;
    if (!j["level"].is_number_unsigned() || j["level"].get<std::uint64_t>() == 0 ||
        j["level"].get<std::uint64_t>() > 0xFFFFFFFFull)
        throw ParseError("level must be a positive integer", 1, 1);
    table.level = j["level"].get<std::uint32_t>();
    if (!j["convention"].is_string()) throw ParseError("convention must be a string", 1, 1);
    std::string conv = j["convention"].get<std::string>();
    if (conv == "chi") table.convention = Convention::chi;
    else if (conv == "none") table.convention = Convention::none;
    else throw ParseError("unknown convention '" + conv + "'", 1, 1);
    if (!j["rows"].is_array()) throw ParseError("rows must be an array", 1, 1);

    std::uint32_t last_p = 0;
    std::size_t idx = 0;
    for (const auto& row : j["rows"]) {
        ++idx;
        if (!row.is_object() || !row.contains("p") || !row.contains("b") || !row["b"].is_array() ||
            row["b"].size() != 2 || !row["p"].is_number_integer() ||
            !row["b"][0].is_number_integer() || !row["b"][1].is_number_integer())
            throw ParseError("row must be {\"p\": <prime>, \"b\": [re, im]}", idx, 1);
        auto pv = row["p"].get<std::int64_t>();
        if (pv < 3 || pv % 2 == 0 || !is_prime_u64(static_cast<std::uint64_t>(pv)))
            throw ParseError("p must be an odd prime", idx, 1);
        auto p = static_cast<std::uint32_t>(pv);
        if (p <= last_p) throw ParseError("primes must be strictly increasing", idx, 1);
        last_p = p;
        GaussInt b{BigInt(row["b"][0].get<std::int64_t>()), BigInt(row["b"][1].get<std::int64_t>())};
        detail::hecke_weil_check(p, b, idx);
        TableEntry entry;
        entry.readings = {b};
        entry.provenance = Provenance::ingested;
        table.rows.emplace(p, entry);
    }
    return table;
}

// Extension-based dispatch: ".json" -> JSON, anything else -> TSV.
inline CharPolyTable parse_hecke(const std::string& text, const std::string& format) {
    if (format == "json") return parse_hecke_json(text);
    if (format == "tsv") return parse_hecke_tsv(text);
    throw UsageError("unknown table format '" + format + "' (expected tsv or json)");
}

inline std::string serialize_hecke_tsv(const CharPolyTable& table) {
    std::ostringstream out;
    out << "level=" << table.level << "\tconvention=" << convention_name(table.convention) << "\n";
    for (const auto& [p, entry] : table.rows) {
        if (entry.ambiguous()) {
            out << "# p=" << p << " ambiguous:";
            for (const auto& b : entry.readings) out << " " << b.str();
            out << "\n";
            continue;
        }
        const GaussInt& b = entry.b();
        out << p << "\t" << b.re << "\t" << b.im << "\n";
    }
    return out.str();
}

inline std::string serialize_hecke_json(const CharPolyTable& table) {
    nlohmann::ordered_json j;
    j["level"] = table.level;
    j["convention"] = convention_name(table.convention);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& [p, entry] : table.rows) {
        if (entry.ambiguous()) continue;
        nlohmann::ordered_json row;
        row["p"] = p;
        row["b"] = {static_cast<std::int64_t>(entry.b().re), static_cast<std::int64_t>(entry.b().im)};
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

// Built-in fixture table (chi convention). Deliberately small: it stores
// only what is pinned independently of this toolkit's own pipeline —
//   * p = 3 with the anchor trace b = 1+2i,
//   * p = 11 with BOTH conjugate-consistent readings, flagged ambiguous:
//     resolving that sign is an output of the pipeline, not an input,
// plus the externally tabulated list of primes whose cubic is annotated
// as having three distinct roots in the 2-adic completion of Q(i).
inline CharPolyTable builtin_fixture_table() {
    CharPolyTable table;
    table.level = 128;
    table.convention = Convention::chi;

    {
        TableEntry e;
        e.readings = {GaussInt(1, 2)};
        e.provenance = Provenance::fixture;
        table.rows.emplace(3, e);
    }
    {
        TableEntry e;
        e.readings = {GaussInt(-7, -10), GaussInt(-7, 10)};
        e.provenance = Provenance::fixture;
        table.rows.emplace(11, e);
    }

    table.annotation_distinct_root_primes = {3, 11, 19, 47, 61};
    return table;
}

} // namespace frv
