#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "taustat/bands.hpp"
#include "taustat/cases.hpp"

namespace taustat::cli {

struct CalibrationCandidate {
    RelatednessRule rule;
    std::optional<double> d_hat;  ///< nullopt when the point estimate never crosses 1
};

struct CalibrationResult {
    double target = 0.0;
    std::vector<CalibrationCandidate> candidates;
    std::optional<std::size_t> best;  ///< index into candidates; nullopt if nothing crossed

    [[nodiscard]] double error(std::size_t i) const { return *candidates[i].d_hat - target; }
};

/// Scans integer-day windows [t_lower, t_upper] with 0 <= t_lower <= t_upper <= max_days, in
/// symmetric then directional mode, and ranks them by |D-hat - target|. Ties keep scan
/// order, so the earliest (symmetric, narrowest) window wins.
[[nodiscard]] CalibrationResult calibrate_window(const CaseSet& cases, const DistanceBandSet& bands, double target,
                                                 int max_days);

}  // namespace taustat::cli
