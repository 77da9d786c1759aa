#include "taustat/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace taustat {

namespace {

// Box-Muller; draws are implemented locally to keep sequences library-independent.
double normal(RngStream& s) {
    const double u1 = 1.0 - s.uniform01();
    const double u2 = s.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double round_tenth(double v) { return std::round(v * 10.0) / 10.0; }

}  // namespace

CaseSet synthetic_outbreak(const SyntheticOutbreak& p, RngStream& stream) {
    std::vector<CaseRecord> raw;
    raw.reserve(p.cases);
    for (std::size_t i = 0; i < p.cases; ++i) {
        CaseRecord c;
        c.id = "s" + std::to_string(i + 1);
        if (i > 0 && stream.uniform01() < p.local_transmission) {
            const auto& parent = raw[stream.uniform_index(i)];
            c.x = std::clamp(parent.x + p.spread_sd * normal(stream), 0.0, p.width);
            c.y = std::clamp(parent.y + p.spread_sd * normal(stream), 0.0, p.height);
            c.onset = parent.onset + std::max(1.0, p.serial_mean + p.serial_sd * normal(stream));
        } else {
            c.x = stream.uniform(0.0, p.width);
            c.y = stream.uniform(0.0, p.height);
            c.onset = i == 0 ? 0.0 : stream.uniform(0.0, 4.0 * p.serial_mean);
        }
        c.x = round_tenth(c.x);
        c.y = round_tenth(c.y);
        c.onset = std::round(c.onset);
        raw.push_back(std::move(c));
    }
    return validate_case_set(std::move(raw));
}

CaseSet synthetic_null(std::size_t n, double extent, double onset_span, RngStream& stream) {
    std::vector<CaseRecord> raw;
    raw.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        raw.push_back({"n" + std::to_string(i + 1), round_tenth(stream.uniform(0.0, extent)),
                       round_tenth(stream.uniform(0.0, extent)), std::floor(stream.uniform(0.0, onset_span))});
    }
    return validate_case_set(std::move(raw));
}

}  // namespace taustat
