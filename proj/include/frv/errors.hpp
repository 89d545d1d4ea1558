#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frv {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments / malformed configuration (CLI exit code 2).
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// A count was requested whose character-evaluation cost exceeds the budget.
// Thrown before any point is enumerated (CLI exit code 3).
struct BudgetExceeded : Error {
    std::uint64_t estimated_cost;
    std::uint64_t budget;
    BudgetExceeded(std::uint64_t cost, std::uint64_t bud)
        : Error("count budget exceeded: estimated " + std::to_string(cost) +
                " character evaluations > budget " + std::to_string(bud)),
          estimated_cost(cost), budget(bud) {}
};

// Solver produced zero or multiple candidates where strict mode demands
// exactly one (CLI exit code 4).
struct AmbiguityError : Error {
    explicit AmbiguityError(const std::string& msg) : Error(msg) {}
};

// A pinned anchor check failed (CLI exit code 5).
struct VerificationMismatch : Error {
    explicit VerificationMismatch(const std::string& msg) : Error(msg) {}
};

// The surface model violated a structural invariant (e.g. the automorphism
// does not preserve the defining polynomial, or the twisted reduction
// produced a coefficient outside the base field).
struct ModelError : Error {
    explicit ModelError(const std::string& msg) : Error(msg) {}
};

// A computed count failed an unconditional sanity bound; indicates a bug in
// the counting kernel, never a property of the input.
struct CountingBugError : Error {
    explicit CountingBugError(const std::string& msg) : Error(msg) {}
};

// Structured parse failure for table ingestion.
struct ParseError : Error {
    std::size_t line; // 1-based
    std::size_t col;  // 1-based, 0 = whole line
    ParseError(const std::string& reason, std::size_t ln, std::size_t cl)
        : Error("parse error at line " + std::to_string(ln) +
                (cl ? ", column " + std::to_string(cl) : std::string()) + ": " + reason),
          line(ln), col(cl) {}
};

// The 2-adic root counter exhausted its maximum working precision.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// Numeric root certification could not decide a predicate within tolerance.
struct UncertifiedError : Error {
    explicit UncertifiedError(const std::string& msg) : Error(msg) {}
};

// A table does not cover the range an operation requires.
struct CoverageError : Error {
    explicit CoverageError(const std::string& msg) : Error(msg) {}
};

} // namespace frv
