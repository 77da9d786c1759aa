#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taustat/bootstrap.hpp"
#include "taustat/null_test.hpp"
#include "taustat/tau_curve.hpp"

namespace taustat {

enum class CrossingOutcome { Crossed, StartedAtOrBelow, NeverCrossed, Failed };

struct Crossing {
    CrossingOutcome outcome = CrossingOutcome::NeverCrossed;
    double distance = 0.0;  ///< valid when outcome == Crossed
};

/// First downward crossing of tau = 1, read off the defined (midpoint, tau) points.
/// The curve must be above 1 at its first defined midpoint; a value exactly 1 counts as
/// crossed at that midpoint. Fewer than 2 defined points is reported as NeverCrossed.
[[nodiscard]] Crossing first_downward_crossing(const TauCurve& curve);

/// Clustering endpoint D-hat, or nullopt if the curve starts at/below 1 or never crosses.
[[nodiscard]] std::optional<double> estimate_endpoint(const TauCurve& curve);

struct CrossingSample {
    std::vector<double> distances;
    std::vector<std::size_t> replicate;  ///< source replicate of each distance
    std::size_t total = 0;
    std::size_t started_at_or_below = 0;
    std::size_t never_crossed = 0;
    std::size_t failed = 0;

    [[nodiscard]] double proportion_used() const noexcept {
        return total == 0 ? 0.0 : double(distances.size()) / double(total);
    }
};

/// Crossing distances of all qualifying replicates. Throws Error{NoCrossings} when none
/// qualifies.
[[nodiscard]] CrossingSample extract_crossings(const BootstrapRun& run);

struct Ci {
    double low = 0.0;
    double high = 0.0;
};

enum class CiMethod { Percentile, Bca };
[[nodiscard]] std::string_view to_string(CiMethod m) noexcept;
[[nodiscard]] CiMethod parse_ci_method(std::string_view text);

/// Empirical quantiles at (1-coverage)/2 and 1-(1-coverage)/2. Throws Error{TooFewValues}
/// for fewer than 2 values.
[[nodiscard]] Ci percentile_ci(std::span<const double> sample, double coverage);

struct BcaResult {
    Ci ci;
    double z0 = 0.0;
    double acceleration = 0.0;
    double level_low = 0.0;   ///< adjusted quantile level for the lower bound
    double level_high = 0.0;
    /// All sample values on one side of the point estimate (z0 infinite): percentile used.
    bool fell_back_to_percentile = false;
};

/// Bias-corrected and accelerated interval.
///
///   z0 = Phi^-1(#{x < point_estimate} / B)
///   a  = sum(d_i^3) / (6 (sum d_i^2)^{3/2}),  d_i = mean_j(theta_(j)) - theta_(i),
/// where theta_(i) is the mean of the sample without x_i (jackknife over the bootstrap
/// sample itself), and the bounds are the empirical quantiles at
///   Phi(z0 + (z0 + z_q) / (1 - a (z0 + z_q)))  for q = (1-coverage)/2, 1-(1-coverage)/2.
///
/// Throws Error{TooFewValues} for B < 20.
[[nodiscard]] BcaResult bca_ci(std::span<const double> sample, double point_estimate, double coverage);

struct EndpointEstimate {
    std::optional<double> d_hat;
    CrossingSample crossings;
    Ci ci;
    CiMethod ci_method = CiMethod::Bca;
    double coverage = 0.95;
    std::optional<BcaResult> bca;  ///< BCa diagnostics when ci_method == Bca
    double sample_mean = 0.0;
    double sample_median = 0.0;
    double bimodality = 0.0;
    bool bimodal = false;
    std::vector<std::string> warnings;

    [[nodiscard]] double proportion_used() const noexcept { return crossings.proportion_used(); }
};

/// D-hat from the point estimate, its bootstrap crossing sample and CI. Emits a warning
/// when proportion_used < 1, when BCa falls back to percentile, when D-hat is undefined
/// (percentile used), and when the crossing sample looks bimodal.
[[nodiscard]] EndpointEstimate estimate_clustering_range(const BootstrapRun& run, CiMethod method, double coverage);

/// Start of inhibition: the last crossing from tau >= 1 into tau < 1 at or before
/// `region_last_band` (the end of a below-envelope region). Throws Error{NoInhibition}.
[[nodiscard]] double estimate_inhibition_start(const TauCurve& curve, std::size_t region_last_band);

/// As above using the first below-region of a null-test result. Throws Error{NoInhibition}
/// if the test found no below-region.
[[nodiscard]] double estimate_inhibition_start(const TauCurve& curve, const EnvelopeTestResult& test);

struct InhibitionEstimate {
    double start = 0.0;
    std::vector<double> sample;
    std::size_t total = 0;
    Ci ci;
    CiMethod ci_method = CiMethod::Percentile;
    std::vector<std::string> warnings;

    [[nodiscard]] double proportion_used() const noexcept {
        return total == 0 ? 0.0 : double(sample.size()) / double(total);
    }
};

/// Inhibition startpoint and a bootstrap CI from the replicates' downward exits over the
/// same band range.
[[nodiscard]] InhibitionEstimate estimate_inhibition(const BootstrapRun& run, const EnvelopeTestResult& test,
                                                     CiMethod method, double coverage);

/// Ratio of disc areas pi r_new^2 / pi r_old^2.
[[nodiscard]] inline double areal_ratio(double r_new, double r_old) { return (r_new / r_old) * (r_new / r_old); }

}  // namespace taustat
