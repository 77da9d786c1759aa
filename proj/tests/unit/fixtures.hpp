#pragma once

#include <limits>
#include <vector>

#include "taustat/taustat.hpp"

namespace taustat::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// A(0,0,t0), B(0,10,t5), C(0,30,t10), D(0,40,t11).
inline CaseSet four_cases() {
    return validate_case_set({{"A", 0, 0, 0}, {"B", 0, 10, 5}, {"C", 0, 30, 10}, {"D", 0, 40, 11}});
}

/// |t_j - t_i| <= 2: only C and D are related.
inline RelatednessRule within_two_days() { return RelatednessRule::make(0, 2, false); }

inline DistanceBandSet two_bands() { return DistanceBandSet({{0, 15}, {15, 35}}); }

inline TauCurve make_curve(std::vector<DistanceBand> bands, std::vector<double> values) {
    TauCurve c;
    c.bands = DistanceBandSet(std::move(bands));
    c.values = std::move(values);
    return c;
}

/// Curve whose band midpoints are exactly `mids` (bands [m-1, m+1)).
inline TauCurve curve_at(const std::vector<double>& mids, std::vector<double> values) {
    std::vector<DistanceBand> bands;
    for (double m : mids) bands.push_back({m - 1.0, m + 1.0});
    return make_curve(std::move(bands), std::move(values));
}

inline CaseSet synthetic(std::size_t n, std::uint64_t seed, double local = 0.8) {
    auto s = RngPolicy{seed}.stream(StreamPurpose::Synthetic, 0);
    SyntheticOutbreak p;
    p.cases = n;
    p.local_transmission = local;
    return synthetic_outbreak(p, s);
}

template <typename F>
ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected taustat::Error";
    return ErrorCode::Io;
}

}  // namespace taustat::testing
