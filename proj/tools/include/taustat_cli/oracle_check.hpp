#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "taustat/bands.hpp"
#include "taustat/cases.hpp"

namespace taustat::cli {

struct OracleCheckOptions {
    std::size_t instances = 200;
    std::size_t max_n = 50;
    std::uint64_t seed = 1;
    double tolerance = 1e-12;  ///< relative, for ratios; counts must match exactly
};

struct OracleCheckReport {
    std::size_t instances = 0;
    std::size_t comparisons = 0;
    std::vector<std::string> failures;
    [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
};

/// Random case sets (integer coordinates so that distances land on band edges, integer
/// onsets so that time differences land on window bounds) checked against the brute-force
/// oracle: band counts, mark counts, tau, the three bootstrap replicate forms and extreme
/// ranks.
[[nodiscard]] OracleCheckReport run_oracle_check(const OracleCheckOptions& opt);

/// The same comparisons on one given data set and rule.
void oracle_check_case_set(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                           std::uint64_t seed,
                           double tolerance, OracleCheckReport& report);

/// Values agree when both are NaN, equal infinities, or within `tol` relative difference.
[[nodiscard]] bool same_value(double a, double b, double tol);

}  // namespace taustat::cli
