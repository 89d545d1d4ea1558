#pragma once

// Comparison of local characteristic-polynomial tables: the six-prime
// equivalence criterion, the hypothesis ledger that records which of its
// assumptions are verified vs merely declared, and the distinct-root
// census over a prime range.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frv/errors.hpp"
#include "frv/gauss.hpp"
#include "frv/local.hpp"
#include "frv/nt.hpp"

namespace frv {

struct ComparisonPolicy {
    std::set<std::uint32_t> dimensions{3, 4}; // admissible representation dimensions
    std::set<std::uint32_t> ram_set{2};       // allowed ramification set S
    std::string field_descriptor = "Q(i), place above 2";
    std::vector<std::uint32_t> designated{5, 7, 11, 17, 23, 31}; // comparison primes

    void validate() const {
        for (std::uint32_t p : designated)
            if (ram_set.count(p))
                throw UsageError("designated comparison primes must avoid the ramification set");
    }
};

inline ComparisonPolicy six_prime_policy() {
    ComparisonPolicy pol;
    pol.validate();
    return pol;
}

enum class Provenance { computed, ingested, fixture };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::computed: return "computed";
        case Provenance::ingested: return "ingested";
        case Provenance::fixture: return "fixture";
    }
    return "?";
}

struct TableEntry {
    std::vector<GaussInt> readings; // one element = unambiguous; several = flagged ambiguous
    Provenance provenance = Provenance::computed;

    bool ambiguous() const { return readings.size() != 1; }
    const GaussInt& b() const {
        if (ambiguous()) throw Error("entry is ambiguous; no single b value");
        return readings.front();
    }
    GaussPoly cubic(std::uint32_t p) const { return poly_expand_shaped(b(), p); }
};

struct CharPolyTable {
    std::uint32_t level = 128;
    Convention convention = Convention::chi;
    std::map<std::uint32_t, TableEntry> rows;

    // declared (not independently provable) metadata
    std::uint32_t declared_dimension = 3;
    std::set<std::uint32_t> declared_ram{2};
    std::string field_descriptor = "Q(i), place above 2";
    bool declared_semisimple = true;
    bool declared_abs_irreducible = true;

    // optional external annotation: primes whose cubic is said to have
    // three distinct roots in the 2-adic completion of Q(i)
    std::vector<std::uint32_t> annotation_distinct_root_primes;

    bool has_unambiguous(std::uint32_t p) const {
        auto it = rows.find(p);
        return it != rows.end() && !it->second.ambiguous();
    }
};

// ------------------------------------------------------------- comparison

enum class VerdictKind { equivalent, distinct, insufficient, hypothesis_unmet };

struct Verdict {
    VerdictKind kind = VerdictKind::insufficient;
    std::optional<std::uint32_t> witness;  // a designated prime with differing polynomials
    std::vector<std::uint32_t> missing;    // designated primes absent (or ambiguous) in a table
    std::string reason;

    std::string name() const {
        switch (kind) {
            case VerdictKind::equivalent: return "Equivalent";
            case VerdictKind::distinct: return "Distinct";
            case VerdictKind::insufficient: return "Insufficient";
            case VerdictKind::hypothesis_unmet: return "HypothesisUnmet";
        }
        return "?";
    }
};

enum class LedgerStatus { satisfied, declared, violated };

struct LedgerItem {
    std::string name;
    LedgerStatus status = LedgerStatus::declared;
    std::string detail;
};

struct HypothesisLedger {
    std::vector<LedgerItem> items;

    bool all_ok() const {
        for (const auto& it : items)
            if (it.status == LedgerStatus::violated) return false;
        return true;
    }
};

// Which comparison hypotheses does a single table satisfy, and which are
// merely declared by its metadata? Semisimplicity and absolute
// irreducibility cannot be verified from finitely many local polynomials;
// they stay "declared". Dimension and ramification are checkable against
// the policy; shape of stored entries is checkable outright.
inline HypothesisLedger hypothesis_ledger(const CharPolyTable& table, const ComparisonPolicy& policy) {
    HypothesisLedger led;

    {
        LedgerItem it;
        it.name = "dimension";
        bool ok = policy.dimensions.count(table.declared_dimension) > 0;
        it.status = ok ? LedgerStatus::satisfied : LedgerStatus::violated;
        it.detail = "declared n = " + std::to_string(table.declared_dimension);
        led.items.push_back(it);
    }
    {
        LedgerItem it;
        it.name = "ramification";
        bool ok = true;
        std::string bad;
        for (std::uint32_t p : table.declared_ram)
            if (!policy.ram_set.count(p)) {
                ok = false;
                bad += (bad.empty() ? "" : ",") + std::to_string(p);
            }
        it.status = ok ? LedgerStatus::satisfied : LedgerStatus::violated;
        it.detail = ok ? "declared S inside the policy set" : "primes outside the policy set: {" + bad + "}";
        led.items.push_back(it);
    }
    {
        LedgerItem it;
        it.name = "coefficient_field";
        bool ok = table.field_descriptor == policy.field_descriptor;
        it.status = ok ? LedgerStatus::satisfied : LedgerStatus::violated;
        it.detail = ok ? "descriptor matches" : "descriptor '" + table.field_descriptor + "' differs";
        led.items.push_back(it);
    }
    {
        LedgerItem it;
        it.name = "semisimple";
        it.status = table.declared_semisimple ? LedgerStatus::declared : LedgerStatus::violated;
        it.detail = table.declared_semisimple ? "declared, not provable from local data"
                                              : "table declares non-semisimple data";
        led.items.push_back(it);
    }
    {
        LedgerItem it;
        it.name = "absolutely_irreducible";
        it.status = table.declared_abs_irreducible ? LedgerStatus::declared : LedgerStatus::violated;
        it.detail = table.declared_abs_irreducible ? "declared, not provable from local data"
                                                   : "table declares reducible data";
        led.items.push_back(it);
    }
    {
        LedgerItem it;
        it.name = "entry_shape";
        bool ok = true;
        std::string bad;
        for (const auto& [p, entry] : table.rows) {
            for (const auto& b : entry.readings) {
                ShapeResult sr = shape_check(poly_expand_shaped(b, p), p);
                if (!sr.ok) {
                    ok = false;
                    bad += (bad.empty() ? "" : ",") + std::to_string(p);
                }
            }
        }
        it.status = ok ? LedgerStatus::satisfied : LedgerStatus::violated;
        it.detail = ok ? "every stored polynomial has the required shape"
                       : "shape violations at {" + bad + "}";
        led.items.push_back(it);
    }
    return led;
}

// Six-prime equivalence verdict. Precedence: missing data (Insufficient)
// is checked first, because absent polynomials can neither witness
// distinctness nor support equivalence; an exact coefficient mismatch at a
// designated prime is decisive (Distinct) regardless of metadata; only
// then are the comparison hypotheses consulted (HypothesisUnmet); if all
// designated polynomials exist, match exactly, and the hypotheses hold or
// are coherently declared, the verdict is Equivalent.
inline Verdict six_prime_compare(const CharPolyTable& left, const CharPolyTable& right,
                                 const ComparisonPolicy& policy = six_prime_policy()) {
    policy.validate();
    Verdict v;

    for (std::uint32_t p : policy.designated) {
        if (!left.has_unambiguous(p) || !right.has_unambiguous(p)) v.missing.push_back(p);
    }
    if (!v.missing.empty()) {
        v.kind = VerdictKind::insufficient;
        v.reason = "designated primes without a usable polynomial on both sides";
        return v;
    }

    for (std::uint32_t p : policy.designated) {
        if (!(left.rows.at(p).b() == right.rows.at(p).b())) {
            v.kind = VerdictKind::distinct;
            v.witness = p;
            v.reason = "characteristic polynomials differ at p = " + std::to_string(p);
            return v;
        }
    }

    HypothesisLedger hl = hypothesis_ledger(left, policy);
    HypothesisLedger hr = hypothesis_ledger(right, policy);
    if (!hl.all_ok() || !hr.all_ok()) {
        v.kind = VerdictKind::hypothesis_unmet;
        for (const auto& led : {hl, hr})
            for (const auto& it : led.items)
                if (it.status == LedgerStatus::violated)
                    v.reason += (v.reason.empty() ? "" : "; ") + it.name + ": " + it.detail;
        return v;
    }
    if (left.convention != right.convention) {
        v.kind = VerdictKind::hypothesis_unmet;
        v.reason = "tables use different trace conventions";
        return v;
    }

    v.kind = VerdictKind::equivalent;
    v.reason = "all designated polynomials coincide and hypotheses are satisfied or coherently declared";
    return v;
}

// ------------------------------------------------------------------ census

struct CensusResult {
    std::uint32_t lo = 0, hi = 0;
    std::vector<std::uint32_t> census;             // primes with three distinct roots
    std::map<std::uint32_t, int> root_counts;      // every resolved prime -> count
    std::map<std::uint32_t, std::string> failures; // per-prime error propagation
};

// Distinct-root census over the odd primes in [lo, hi]. The table must
// cover the range (every odd prime present); ambiguous entries are
// admitted only when all readings agree on the root count (conjugate
// readings always do). Per-prime computation failures are recorded and do
// not abort the remaining primes.
inline CensusResult distinct_root_census(const CharPolyTable& table, std::uint32_t lo, std::uint32_t hi) {
    if (lo > hi) throw UsageError("census range is empty or inverted");
    CensusResult res;
    res.lo = lo;
    res.hi = hi;

    std::vector<std::uint32_t> missing;
    for (std::uint32_t p = lo; p <= hi; ++p) {
        if (p == 2 || !is_prime_u64(p)) continue;
        if (!table.rows.count(p)) missing.push_back(p);
    }
    if (!missing.empty()) {
        std::string s;
        for (auto p : missing) s += (s.empty() ? "" : ", ") + std::to_string(p);
        throw CoverageError("table does not cover the census range; missing primes: " + s);
    }

    for (std::uint32_t p = lo; p <= hi; ++p) {
        if (p == 2 || !is_prime_u64(p)) continue;
        const TableEntry& entry = table.rows.at(p);
        try {
            int count = -1;
            for (const auto& b : entry.readings) {
                int c = roots_in_q2i(poly_expand_shaped(b, p));
                if (count < 0) count = c;
                else if (count != c)
                    throw AmbiguityError("ambiguous readings disagree on the distinct-root count");
            }
            res.root_counts[p] = count;
            if (count == 3) res.census.push_back(p);
        } catch (const Error& e) {
            res.failures[p] = e.what();
        }
    }
    return res;
}

} // namespace frv
