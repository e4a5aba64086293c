// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Failure classes surfaced by the library. The CLI maps them to exit codes:
// usage/schema -> 2, precision_exhausted -> 3, everything else -> 1.
enum class errc {
    usage,
    precision_exhausted,
    monotonicity_violation,
    prefix_exhausted,
    criterion_not_met,
    flag_violation,
    growth_violation,
    rational_hit,
    hypothesis_violated,
    schema_violation,
    verdict_mismatch,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}

    errc code() const noexcept { return code_; }

    const char* kind() const noexcept {
        switch (code_) {
        case errc::usage: return "usage";
        case errc::precision_exhausted: return "precision-exhausted";
        case errc::monotonicity_violation: return "monotonicity-violation";
        case errc::prefix_exhausted: return "prefix-exhausted";
        case errc::criterion_not_met: return "criterion-not-met";
        case errc::flag_violation: return "flag-violation";
        case errc::growth_violation: return "growth-violation";
        case errc::rational_hit: return "rational-hit";
        case errc::hypothesis_violated: return "hypothesis-violated";
        case errc::schema_violation: return "schema-violation";
        case errc::verdict_mismatch: return "verdict-mismatch";
        }
        return "error";
    }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

// Evaluation budgets shared by all refinement and scan loops. Every loop that
// could in principle run forever must consume one of these limits and raise
// a typed error instead of diverging.
struct budget {
    std::size_t max_terms = 64;            // series terms per truncation
    std::size_t max_bits = std::size_t(1) << 22;   // largest dense value materialized
    std::size_t max_scan = 1'000'000;      // candidate indices in sequence scans

    static const budget& defaults() {
        static const budget b{};
        return b;
    }
};

} // namespace liouville
