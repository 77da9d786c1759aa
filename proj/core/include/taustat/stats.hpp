#pragma once

#include <span>
#include <vector>

namespace taustat::stats {

/// Quantile of an ascending-sorted sample by linear interpolation between order statistics
/// (h = (n-1)p; the "type 7" definition). p is clamped to [0, 1].
[[nodiscard]] double quantile_sorted(std::span<const double> sorted, double p);

/// Same as quantile_sorted on a copy of `sample` sorted ascending.
[[nodiscard]] double quantile(std::span<const double> sample, double p);

[[nodiscard]] double mean(std::span<const double> sample);
[[nodiscard]] double median(std::span<const double> sample);
[[nodiscard]] double variance(std::span<const double> sample);  ///< unbiased (n-1)

/// Standard normal CDF and its inverse.
[[nodiscard]] double normal_cdf(double z);
[[nodiscard]] double normal_quantile(double p);

/// Sarle's bimodality coefficient (g1^2 + 1) / (g2 + 3(n-1)^2 / ((n-2)(n-3))) using the
/// bias-corrected sample skewness g1 and excess kurtosis g2. Needs n >= 4. Values above
/// 5/9 (the uniform distribution's value) suggest bimodality.
[[nodiscard]] double bimodality_coefficient(std::span<const double> sample);

inline constexpr double kBimodalityThreshold = 5.0 / 9.0;

}  // namespace taustat::stats
