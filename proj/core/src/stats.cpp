#include "taustat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "taustat/error.hpp"

namespace taustat::stats {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw Error(ErrorCode::TooFewValues, "quantile of an empty sample");
    p = std::clamp(p, 0.0, 1.0);
    const double h = double(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - double(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::span<const double> sample, double p) {
    std::vector<double> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, p);
}

double mean(std::span<const double> sample) {
    if (sample.empty()) throw Error(ErrorCode::TooFewValues, "mean of an empty sample");
    return std::accumulate(sample.begin(), sample.end(), 0.0) / double(sample.size());
}

double median(std::span<const double> sample) { return quantile(sample, 0.5); }

double variance(std::span<const double> sample) {
    if (sample.size() < 2) throw Error(ErrorCode::TooFewValues, "variance needs at least 2 values");
    const double m = mean(sample);
    double ss = 0.0;
    for (double x : sample) ss += (x - m) * (x - m);
    return ss / double(sample.size() - 1);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (p <= 0.0) return -INFINITY;
    if (p >= 1.0) return INFINITY;
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double bimodality_coefficient(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n < 4) throw Error(ErrorCode::TooFewValues, "bimodality coefficient needs at least 4 values");
    const double m = mean(sample);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : sample) {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double dn = double(n);
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    if (m2 == 0.0) return 0.0;
    const double g1_raw = m3 / std::pow(m2, 1.5);
    const double g2_raw = m4 / (m2 * m2) - 3.0;
    const double g1 = g1_raw * std::sqrt(dn * (dn - 1.0)) / (dn - 2.0);
    const double g2 = ((dn + 1.0) * g2_raw + 6.0) * (dn - 1.0) / ((dn - 2.0) * (dn - 3.0));
    return (g1 * g1 + 1.0) / (g2 + 3.0 * (dn - 1.0) * (dn - 1.0) / ((dn - 2.0) * (dn - 3.0)));
}

}  // namespace taustat::stats
