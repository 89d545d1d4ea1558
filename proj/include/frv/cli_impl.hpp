#pragma once

// In-process CLI implementation. tools/frv.cpp is a thin wrapper around
// run_cli(); the test suite calls run_cli() directly to pin the exit-code
// contract without spawning processes.
//
// Exit codes: 0 success (verdicts and census conflicts are findings, not
// errors), 2 usage/input errors, 3 budget refusals, 4 strict-mode
// ambiguity, 5 anchor verification mismatch, 1 anything else.

#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frv/compare.hpp"
#include "frv/errors.hpp"
#include "frv/gauss.hpp"
#include "frv/hecke.hpp"
#include "frv/local.hpp"
#include "frv/nt.hpp"
#include "frv/report.hpp"
#include "frv/spectral.hpp"
#include "frv/surface.hpp"

namespace frv {

namespace cli_detail {

struct Globals {
    bool json = false;
    bool csv = false;
    bool strict = false;
    bool force_generic = false;
    std::uint32_t workers = default_workers();
    std::uint64_t budget = DEFAULT_BUDGET;
    std::uint64_t chunk = 0;
    std::int64_t family_a = 2;
    std::string convention = "chi";

    Convention conv() const { return convention == "none" ? Convention::none : Convention::chi; }
    CountConfig count_cfg() const {
        CountConfig c;
        c.workers = workers;
        c.budget = budget;
        c.chunk = chunk;
        c.force_generic = force_generic;
        return c;
    }
};

inline Autom autom_from(const std::string& s) {
    if (s == "phi_standard") return Autom::phi_standard;
    if (s == "identity") return Autom::identity;
    if (s == "swap_xy") return Autom::swap_xy;
    throw UsageError("unknown automorphism '" + s + "'");
}

// Counts both series up to K and converts a budget refusal into the typed
// error so `solve`-family commands exit 3 exactly like `count` does.
inline SeriesResult series_or_throw(const SurfaceModel& model, std::uint32_t p, std::uint32_t K,
                                    const CountConfig& cfg, std::ostream& err) {
    SeriesResult series = count_series(model, p, K, cfg);
    for (const auto& r : series.straight)
        err << "# p=" << p << " straight k=" << r.k << ": " << r.elapsed_s << "s\n";
    for (const auto& r : series.twisted)
        err << "# p=" << p << " twisted k=" << r.k << ": " << r.elapsed_s << "s\n";
    if (series.failure) throw BudgetExceeded(series.failure->estimated_cost, series.failure->budget);
    return series;
}

inline CharPolyTable load_table(const std::string& spec) {
    if (spec == "builtin") return builtin_fixture_table();
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw UsageError("cannot open table file '" + spec + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string fmt = spec.size() >= 5 && spec.substr(spec.size() - 5) == ".json" ? "json" : "tsv";
    return parse_hecke(buf.str(), fmt);
}

inline nlohmann::ordered_json ledger_json(const HypothesisLedger& led) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& item : led.items) {
        const char* st = item.status == LedgerStatus::satisfied ? "satisfied"
                         : item.status == LedgerStatus::declared ? "declared"
                                                                 : "violated";
        arr.push_back({{"name", item.name}, {"status", st}, {"detail", item.detail}});
    }
    return arr;
}

} // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using cli_detail::Globals;
    Globals g;

    CLI::App app{"recompute and verify rank-3 local Frobenius data from surface point counts"};
    app.name("frv");
    app.require_subcommand(1);
    app.set_version_flag("--version", "frv 1.0.0");
    app.add_flag("--json", g.json, "machine-readable JSON output");
    app.add_flag("--csv", g.csv, "CSV output (report only)")->excludes("--json");
    app.add_flag("--strict", g.strict, "fail (exit 4) when a solve is not unique");
    app.add_flag("--force-generic", g.force_generic, "disable the log/Zech table fast path");
    app.add_option("--workers", g.workers, "worker threads (default: FRV_WORKERS or hardware)");
    app.add_option("--budget", g.budget, "character-evaluation budget per count");
    app.add_option("--chunk", g.chunk, "x-chunk size for the counting loop (0 = auto)");
    app.add_option("--family-a", g.family_a, "family parameter a in x^2 - y^2 + a*x*y");
    app.add_option("--convention", g.convention, "trace normalization for displayed b")
        ->check(CLI::IsMember({"chi", "none"}));

    // ---------------------------------------------------------------- count
    struct {
        std::uint32_t p = 0, k = 1;
        std::string kind = "both", autom = "phi_standard";
    } oc;
    auto* c_count = app.add_subcommand("count", "point counts for one (p, k)");
    c_count->fallthrough();
    c_count->add_option("--p", oc.p, "odd prime")->required();
    c_count->add_option("--k", oc.k, "extension degree");
    c_count->add_option("--kind", oc.kind)->check(CLI::IsMember({"straight", "twisted", "both"}));
    c_count->add_option("--autom", oc.autom)
        ->check(CLI::IsMember({"phi_standard", "identity", "swap_xy"}));
    c_count->callback([&] {
        SurfaceModel model = SurfaceModel::make(g.family_a, cli_detail::autom_from(oc.autom));
        nlohmann::ordered_json j;
        j["p"] = oc.p;
        j["k"] = oc.k;
        j["family_a"] = g.family_a;
        j["automorphism"] = oc.autom;
        std::string text;
        if (oc.kind == "straight" || oc.kind == "both") {
            CountRecord r = count_straight(model, oc.p, oc.k, g.count_cfg());
            err << "# straight: " << r.elapsed_s << "s\n";
            j["straight"] = r.count;
            text += "straight p=" + std::to_string(oc.p) + " k=" + std::to_string(oc.k) + ": " +
                    std::to_string(r.count) + "\n";
        }
        if (oc.kind == "twisted" || oc.kind == "both") {
            CountRecord r = count_twisted(model, oc.p, oc.k, g.count_cfg());
            err << "# twisted: " << r.elapsed_s << "s\n";
            j["twisted"] = r.count;
            text += "twisted p=" + std::to_string(oc.p) + " k=" + std::to_string(oc.k) + ": " +
                    std::to_string(r.count) + "\n";
        }
        if (g.json) out << j.dump(2) << "\n";
        else out << text;
    });

    // ---------------------------------------------------------------- solve
    struct {
        std::uint32_t p = 0, K = 2, D = 6, rmax = 12;
        bool wide = false;
    } os;
    auto* c_solve = app.add_subcommand("solve", "recover the trace a_p from the count series");
    c_solve->fallthrough();
    c_solve->add_option("--p", os.p, "odd prime")->required();
    c_solve->add_option("--K", os.K, "series depth (k = 1..K)");
    auto* optD = c_solve->add_option("--D", os.D, "dictionary divisor bound (implies --wide)");
    auto* optR = c_solve->add_option("--rmax", os.rmax, "dictionary dimension bound (implies --wide)");
    c_solve->add_flag("--wide", os.wide, "use the wide dictionary engine instead of pinned profiles");
    c_solve->callback([&] {
        SurfaceModel model = SurfaceModel::make(g.family_a, Autom::phi_standard);
        SeriesResult series = cli_detail::series_or_throw(model, os.p, os.K, g.count_cfg(), err);
        std::vector<std::int64_t> S = series.straight_counts(), T = series.twisted_counts();
        bool wide = os.wide || optD->count() > 0 || optR->count() > 0;

        nlohmann::ordered_json j;
        j["p"] = os.p;
        j["K"] = os.K;
        j["engine"] = wide ? "dict" : "pinned";
        j["counts"] = {{"straight", S}, {"twisted", T}};
        std::string text;
        bool unique = false;
        if (wide) {
            DictConfig dc;
            dc.D = os.D;
            dc.rmax = os.rmax;
            DictSolution sol = solve_dict(os.p, S, T, dc);
            unique = sol.unique();
            auto arr = nlohmann::ordered_json::array();
            for (const auto& cand : sol.candidates) {
                nlohmann::ordered_json jc;
                jc["a"] = GaussInt(cand.a.re, cand.a.im).str();
                jc["w1"] = cand.w1;
                auto jd = nlohmann::ordered_json::object();
                for (const auto& [d, m] : cand.dict) jd[std::to_string(d)] = m;
                jc["dict"] = jd;
                arr.push_back(jc);
                text += "a = " + GaussInt(cand.a.re, cand.a.im).str() + "  (w1=" +
                        std::to_string(cand.w1) + ")\n";
            }
            j["candidates"] = arr;
            j["bound_hit_D"] = sol.bound_hit_D;
            j["bound_hit_r"] = sol.bound_hit_r;
        } else {
            PinnedSolution sol = solve_pinned(os.p, S, T);
            unique = sol.unique();
            auto arr = nlohmann::ordered_json::array();
            for (const auto& cand : sol.candidates) {
                arr.push_back({{"a", cand.a.str()}, {"profiles", cand.profiles}});
                std::string profs;
                for (const auto& pr : cand.profiles) profs += (profs.empty() ? "" : ",") + pr;
                text += "a = " + cand.a.str() + "  (boundary: " + profs + ")\n";
            }
            j["candidates"] = arr;
        }
        j["unique"] = unique;
        if (g.strict && !unique)
            throw AmbiguityError("solve at p = " + std::to_string(os.p) + " is not unique (" +
                                 std::to_string(j["candidates"].size()) + " candidates)");
        if (g.json) out << j.dump(2) << "\n";
        else out << (text.empty() ? "no candidate\n" : text);
    });

    // ------------------------------------------------------------------- bp
    struct {
        std::uint32_t p = 0, K = 2;
    } ob;
    auto* c_bp = app.add_subcommand("bp", "normalized trace b_p recomputed from counts");
    c_bp->fallthrough();
    c_bp->add_option("--p", ob.p, "odd prime")->required();
    c_bp->add_option("--K", ob.K, "series depth");
    c_bp->callback([&] {
        SurfaceModel model = SurfaceModel::make(g.family_a, Autom::phi_standard);
        SeriesResult series = cli_detail::series_or_throw(model, ob.p, ob.K, g.count_cfg(), err);
        PinnedSolution sol = solve_pinned(ob.p, series.straight_counts(), series.twisted_counts());
        if (g.strict && !sol.unique())
            throw AmbiguityError("b_" + std::to_string(ob.p) + " is not determined at K = " +
                                 std::to_string(ob.K) + " (" + std::to_string(sol.candidates.size()) +
                                 " candidates)");
        nlohmann::ordered_json j;
        j["p"] = ob.p;
        j["K"] = ob.K;
        j["convention"] = g.convention;
        auto arr = nlohmann::ordered_json::array();
        std::string text;
        for (const auto& cand : sol.candidates) {
            GaussInt b = bp_from_ap(cand.a, ob.p, g.conv());
            arr.push_back({{"a", cand.a.str()}, {"b", b.str()}});
            text += "b_" + std::to_string(ob.p) + " = " + b.str() + "\n";
        }
        j["candidates"] = arr;
        j["unique"] = sol.unique();
        if (g.json) out << j.dump(2) << "\n";
        else out << (text.empty() ? "no candidate\n" : text);
    });

    // -------------------------------------------------------------- lfactor
    struct {
        std::uint32_t p = 0, K = 2;
        std::int64_t bre = 0, bim = 0;
    } ol;
    auto* c_lf = app.add_subcommand("lfactor", "local factor and characteristic polynomial");
    c_lf->fallthrough();
    c_lf->add_option("--p", ol.p, "odd prime")->required();
    auto* lf_re = c_lf->add_option("--b-re", ol.bre, "use this b instead of recomputing");
    auto* lf_im = c_lf->add_option("--b-im", ol.bim, "imaginary part of b");
    lf_re->needs(lf_im);
    lf_im->needs(lf_re);
    c_lf->add_option("--K", ol.K, "series depth when recomputing");
    c_lf->callback([&] {
        GaussInt b;
        if (lf_re->count()) {
            b = GaussInt(ol.bre, ol.bim);
        } else {
            SurfaceModel model = SurfaceModel::make(g.family_a, Autom::phi_standard);
            SeriesResult series = cli_detail::series_or_throw(model, ol.p, ol.K, g.count_cfg(), err);
            PinnedSolution sol = solve_pinned(ol.p, series.straight_counts(), series.twisted_counts());
            if (!sol.unique())
                throw AmbiguityError("local factor at p = " + std::to_string(ol.p) +
                                     " needs a unique solve; got " +
                                     std::to_string(sol.candidates.size()) + " candidates");
            b = bp_from_ap(sol.candidates.front().a, ol.p, g.conv());
        }
        LocalFactor lf = euler_factor(b, ol.p);
        FrobCubic cubic = FrobCubic::make(b, ol.p);
        if (g.json) {
            nlohmann::ordered_json j;
            j["p"] = ol.p;
            j["b"] = b.str();
            j["euler_factor"] = lf.display();
            j["charpoly"] = cubic.poly.str();
            out << j.dump(2) << "\n";
        } else {
            out << "L_" << ol.p << "(X)^-1 = " << lf.display() << "\n";
            out << "charpoly(T) = " << cubic.poly.str() << "\n";
        }
    });

    // --------------------------------------------------------------- purity
    struct {
        std::uint32_t p = 0;
        std::int64_t bre = 0, bim = 0;
        int w = 2;
        double tol = 1e-9;
    } op;
    auto* c_pu = app.add_subcommand("purity", "certified weight-w purity of the shaped cubic");
    c_pu->fallthrough();
    c_pu->add_option("--p", op.p, "odd prime")->required();
    c_pu->add_option("--b-re", op.bre, "Re(b)")->required();
    c_pu->add_option("--b-im", op.bim, "Im(b)")->required();
    c_pu->add_option("--w", op.w, "weight");
    c_pu->add_option("--tol", op.tol, "relative certification tolerance");
    c_pu->callback([&] {
        GaussPoly poly = poly_expand_shaped(GaussInt(op.bre, op.bim), op.p);
        bool pure = is_pure(poly, op.p, op.w, op.tol);
        if (g.json) {
            nlohmann::ordered_json j{{"p", op.p}, {"w", op.w}, {"pure", pure}};
            out << j.dump(2) << "\n";
        } else {
            out << (pure ? "pure" : "impure") << "\n";
        }
    });

    // --------------------------------------------------------------- roots2
    struct {
        std::uint32_t p = 0;
        std::int64_t bre = 0, bim = 0;
    } orr;
    auto* c_r2 = app.add_subcommand("roots2", "distinct roots of the cubic over the 2-adic completion");
    c_r2->fallthrough();
    c_r2->add_option("--p", orr.p, "odd prime")->required();
    c_r2->add_option("--b-re", orr.bre, "Re(b)")->required();
    c_r2->add_option("--b-im", orr.bim, "Im(b)")->required();
    c_r2->callback([&] {
        int n = roots_in_q2i(poly_expand_shaped(GaussInt(orr.bre, orr.bim), orr.p));
        if (g.json) {
            nlohmann::ordered_json j{{"p", orr.p}, {"roots2", n}};
            out << j.dump(2) << "\n";
        } else {
            out << n << "\n";
        }
    });

    // ----------------------------------------------------------------- cusp
    struct {
        std::uint32_t p = 0, max_order = 64;
        std::int64_t bre = 0, bim = 0;
    } ocu;
    auto* c_cu = app.add_subcommand("cusp", "roots of the form p * (root of unity)");
    c_cu->fallthrough();
    c_cu->add_option("--p", ocu.p, "odd prime")->required();
    c_cu->add_option("--b-re", ocu.bre, "Re(b)")->required();
    c_cu->add_option("--b-im", ocu.bim, "Im(b)")->required();
    c_cu->add_option("--max-order", ocu.max_order, "largest root-of-unity order tested");
    c_cu->callback([&] {
        auto entries =
            unit_times_p_roots(poly_expand_shaped(GaussInt(ocu.bre, ocu.bim), ocu.p), ocu.p, ocu.max_order);
        if (g.json) {
            nlohmann::ordered_json j;
            j["p"] = ocu.p;
            j["entries"] = nlohmann::ordered_json::array();
            for (const auto& e : entries) {
                nlohmann::ordered_json item;
                item["order"] = e.order;
                if (e.has_root) item["root"] = e.root.str();
                else item["factor"] = e.factor.str();
                j["entries"].push_back(item);
            }
            out << j.dump(2) << "\n";
        } else {
            if (entries.empty()) out << "none\n";
            for (const auto& e : entries) {
                out << "order " << e.order << ": "
                    << (e.has_root ? "root " + e.root.str() : "factor " + e.factor.str()) << "\n";
            }
        }
    });

    // --------------------------------------------------------------- ingest
    struct {
        std::string file, format = "auto", emit = "none";
    } oi;
    auto* c_in = app.add_subcommand("ingest", "parse and validate an external b_p table");
    c_in->fallthrough();
    c_in->add_option("--file", oi.file, "table file")->required()->check(CLI::ExistingFile);
    c_in->add_option("--format", oi.format)->check(CLI::IsMember({"auto", "tsv", "json"}));
    c_in->add_option("--emit", oi.emit, "re-serialize to stdout")
        ->check(CLI::IsMember({"none", "tsv", "json"}));
    c_in->callback([&] {
        std::ifstream in(oi.file, std::ios::binary);
        if (!in) throw UsageError("cannot open table file '" + oi.file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string fmt = oi.format;
        if (fmt == "auto")
            fmt = oi.file.size() >= 5 && oi.file.substr(oi.file.size() - 5) == ".json" ? "json" : "tsv";
        CharPolyTable table = parse_hecke(buf.str(), fmt);
        if (oi.emit == "tsv") {
            out << serialize_hecke_tsv(table);
            return;
        }
        if (oi.emit == "json") {
            out << serialize_hecke_json(table);
            return;
        }
        if (g.json) {
            nlohmann::ordered_json j;
            j["level"] = table.level;
            j["convention"] = convention_name(table.convention);
            j["rows"] = table.rows.size();
            if (!table.rows.empty()) {
                j["first_p"] = table.rows.begin()->first;
                j["last_p"] = table.rows.rbegin()->first;
            }
            out << j.dump(2) << "\n";
        } else {
            out << "level " << table.level << ", convention " << convention_name(table.convention)
                << ", " << table.rows.size() << " rows\n";
        }
    });

    // -------------------------------------------------------------- compare
    struct {
        std::string left, right = "builtin";
    } oco;
    auto* c_cmp = app.add_subcommand("compare", "six-prime equivalence verdict for two tables");
    c_cmp->fallthrough();
    c_cmp->add_option("--left", oco.left, "table file or 'builtin'")->required();
    c_cmp->add_option("--right", oco.right, "table file or 'builtin'");
    c_cmp->callback([&] {
        CharPolyTable L = cli_detail::load_table(oco.left);
        CharPolyTable R = cli_detail::load_table(oco.right);
        ComparisonPolicy policy = six_prime_policy();
        Verdict v = six_prime_compare(L, R, policy);
        if (g.json) {
            nlohmann::ordered_json j;
            j["verdict"] = v.name();
            j["reason"] = v.reason;
            if (v.witness) j["witness"] = *v.witness;
            if (!v.missing.empty()) j["missing"] = v.missing;
            j["left_hypotheses"] = cli_detail::ledger_json(hypothesis_ledger(L, policy));
            j["right_hypotheses"] = cli_detail::ledger_json(hypothesis_ledger(R, policy));
            out << j.dump(2) << "\n";
        } else {
            out << "verdict: " << v.name() << "\n";
            out << "reason: " << v.reason << "\n";
            if (v.witness) out << "witness: p = " << *v.witness << "\n";
            if (!v.missing.empty()) {
                out << "missing:";
                for (auto p : v.missing) out << " " << p;
                out << "\n";
            }
        }
    });

    // --------------------------------------------------------------- census
    struct {
        std::uint32_t lo = 3, hi = 67, K = 2;
        std::string source = "computed";
    } oce;
    auto* c_ce = app.add_subcommand("census", "distinct-root census over a prime range");
    c_ce->fallthrough();
    c_ce->add_option("--lo", oce.lo, "range start");
    c_ce->add_option("--hi", oce.hi, "range end");
    c_ce->add_option("--K", oce.K, "series depth for the computed source");
    c_ce->add_option("--source", oce.source, "'computed', 'builtin', or a table file");
    c_ce->callback([&] {
        CharPolyTable table;
        if (oce.source == "computed") {
            SurfaceModel model = SurfaceModel::make(g.family_a, Autom::phi_standard);
            table.convention = Convention::chi;
            for (std::uint32_t p = oce.lo; p <= oce.hi; ++p) {
                if (p == 2 || !is_prime_u64(p)) continue;
                SeriesResult series = cli_detail::series_or_throw(model, p, oce.K, g.count_cfg(), err);
                PinnedSolution sol = solve_pinned(p, series.straight_counts(), series.twisted_counts());
                if (!sol.unique())
                    throw AmbiguityError("census needs a unique solve at every prime; p = " +
                                         std::to_string(p) + " has " +
                                         std::to_string(sol.candidates.size()) + " candidates");
                TableEntry e;
                e.readings = {bp_from_ap(sol.candidates.front().a, p, Convention::chi)};
                e.provenance = Provenance::computed;
                table.rows.emplace(p, e);
            }
        } else {
            table = cli_detail::load_table(oce.source);
        }
        CensusResult res = distinct_root_census(table, oce.lo, oce.hi);

        std::vector<std::uint32_t> annotation;
        for (std::uint32_t p : builtin_fixture_table().annotation_distinct_root_primes)
            if (p >= oce.lo && p <= oce.hi) annotation.push_back(p);
        std::vector<std::uint32_t> conflicts;
        {
            std::set<std::uint32_t> in_census(res.census.begin(), res.census.end());
            std::set<std::uint32_t> in_ann(annotation.begin(), annotation.end());
            for (const auto& [p, n] : res.root_counts)
                if (in_census.count(p) != in_ann.count(p)) conflicts.push_back(p);
        }

        if (g.json) {
            nlohmann::ordered_json j;
            j["lo"] = res.lo;
            j["hi"] = res.hi;
            j["census"] = res.census;
            auto rc = nlohmann::ordered_json::object();
            for (const auto& [p, n] : res.root_counts) rc[std::to_string(p)] = n;
            j["root_counts"] = rc;
            auto fl = nlohmann::ordered_json::object();
            for (const auto& [p, msg] : res.failures) fl[std::to_string(p)] = msg;
            j["failures"] = fl;
            j["annotation"] = annotation;
            j["conflicts"] = conflicts;
            out << j.dump(2) << "\n";
        } else {
            out << "census:";
            for (auto p : res.census) out << " " << p;
            out << "\nannotation:";
            for (auto p : annotation) out << " " << p;
            out << "\nconflicts:";
            for (auto p : conflicts) out << " " << p;
            out << "\n";
            for (const auto& [p, msg] : res.failures) out << "failure at p=" << p << ": " << msg << "\n";
        }
    });

    // --------------------------------------------------------------- report
    struct {
        std::uint32_t lo = 3, hi = 67, K = 2;
        std::string table;
        bool anchors = false, tamper = false;
    } ore;
    auto* c_rep = app.add_subcommand("report", "full pipeline report over a prime range");
    c_rep->fallthrough();
    c_rep->add_option("--lo", ore.lo, "range start");
    c_rep->add_option("--hi", ore.hi, "range end");
    c_rep->add_option("--K", ore.K, "series depth");
    c_rep->add_option("--table", ore.table,
                      "external table ('builtin' or a file) for the six-prime comparison");
    c_rep->add_flag("--verify-anchors", ore.anchors, "check the pinned anchor identities");
    c_rep->add_flag("--selftest-tamper", ore.tamper)->group(""); // hidden negative control
    c_rep->callback([&] {
        RunConfig rc;
        rc.lo = ore.lo;
        rc.hi = ore.hi;
        rc.K = ore.K;
        rc.family_a = g.family_a;
        rc.convention = g.conv();
        rc.count = g.count_cfg();
        rc.verify_anchors = ore.anchors;
        rc.selftest_tamper = ore.tamper;
        if (!ore.table.empty()) rc.compare_table = cli_detail::load_table(ore.table);
        Report rep = run_report(rc);
        err << rep.sidecar;
        if (g.csv) out << report_csv(rep.body);
        else out << rep.body.dump(2) << "\n";
    });

    // ---------------------------------------------------------------- parse
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "frv 1.0.0\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const frv::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CoverageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const AmbiguityError& e) {
        err << "ambiguous: " << e.what() << "\n";
        return 4;
    } catch (const VerificationMismatch& e) {
        err << "verification mismatch: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace frv
