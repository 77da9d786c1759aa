#include "taustat_cli/calibration.hpp"

#include <cmath>

#include "taustat/error.hpp"
#include "taustat/interval.hpp"
#include "taustat/tau.hpp"

namespace taustat::cli {

CalibrationResult calibrate_window(const CaseSet& cases, const DistanceBandSet& bands, double target, int max_days) {
    CalibrationResult out;
    out.target = target;
    for (const bool directional : {false, true}) {
        for (int lo = 0; lo <= max_days; ++lo) {
            for (int hi = lo; hi <= max_days; ++hi) {
                CalibrationCandidate c{RelatednessRule::make(lo, hi, directional), std::nullopt};
                try {
                    c.d_hat = estimate_endpoint(tau_point_estimate(cases, c.rule, bands));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::DegenerateBackgroundOdds) throw;
                }
                out.candidates.push_back(c);
                const std::size_t i = out.candidates.size() - 1;
                if (c.d_hat && (!out.best || std::abs(out.error(i)) < std::abs(out.error(*out.best)))) out.best = i;
            }
        }
    }
    return out;
}

}  // namespace taustat::cli
