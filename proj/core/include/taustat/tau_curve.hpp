#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "taustat/bands.hpp"
#include "taustat/cases.hpp"

namespace taustat {

enum class CurveSource { PointEstimate, BootstrapReplicate, NullPermutation };

/// Tau estimates, one per band. A value that is not finite is flagged-undefined:
/// NaN when a band has no unrelated pairs (or 0/0 local terms), +inf for the
/// infinite local terms that MPSB can produce.
struct TauCurve {
    DistanceBandSet bands;
    std::vector<double> values;
    RelatednessRule rule;
    CurveSource source = CurveSource::PointEstimate;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] bool defined(std::size_t k) const noexcept { return std::isfinite(values[k]); }
    [[nodiscard]] std::size_t defined_count() const noexcept {
        std::size_t c = 0;
        for (double v : values) c += std::isfinite(v) ? 1 : 0;
        return c;
    }
};

}  // namespace taustat
