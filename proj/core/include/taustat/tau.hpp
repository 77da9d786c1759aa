#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "taustat/pair_table.hpp"
#include "taustat/tau_curve.hpp"

namespace taustat {

/// Odds of a related pair: related / unrelated ordered-pair counts.
struct OddsValue {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0;

    [[nodiscard]] bool defined() const noexcept { return denominator > 0; }
    /// NaN when undefined.
    [[nodiscard]] double value() const noexcept;
};

/// Tau odds ratio per band: theta(band) / theta(0, inf).
///
/// Bands with no unrelated pairs are flagged-undefined (NaN); bands with no related pairs
/// give 0. Throws Error{DegenerateBackgroundOdds} if the all-distance related or unrelated
/// count is zero, i.e. the relatedness rule relates none or all pairs.
[[nodiscard]] TauCurve tau_odds(const BandCounts& counts, const DistanceBandSet& bands, const RelatednessRule& rule,
                                CurveSource source = CurveSource::PointEstimate);

/// Convenience: pair table, counts and tau for a case set.
[[nodiscard]] TauCurve tau_point_estimate(const CaseSet& cases, const RelatednessRule& rule,
                                          const DistanceBandSet& bands);

enum class UndefinedPolicy {
    Skip,   ///< connect the nearest defined midpoints on either side
    Strict, ///< throw UndefinedNeighbor
};

struct Interpolated {
    double value = 0.0;
    bool skipped_undefined = false;  ///< an undefined band was bridged; callers should warn
};

/// Piecewise-linear tau at distance d over (midpoint, tau) pairs. Exact at midpoints.
/// Throws Error{OutOfRange} outside [first midpoint, last midpoint] and
/// Error{UndefinedNeighbor} when no defined value can flank d (or, in Strict mode, when a
/// flanking value is undefined).
[[nodiscard]] Interpolated interpolate_tau(const TauCurve& curve, double d,
                                           UndefinedPolicy policy = UndefinedPolicy::Skip);

/// Case multiplicities of a resample given as 0-based case indices.
[[nodiscard]] std::vector<std::uint32_t> multiplicities(std::size_t n, std::span<const std::size_t> indices);

/// MMPSB replicate: per-case mark counts (each against all other original cases) summed over
/// the resampled multiset, then bootstrapped odds and their ratio. Throws
/// Error{DegenerateBackgroundOdds} like tau_odds.
[[nodiscard]] TauCurve tau_mmpsb_replicate(const MarkCounts& marks, std::span<const std::size_t> indices,
                                           const DistanceBandSet& bands, const RelatednessRule& rule);

/// Result of one MPSB replicate with the per-band count of non-finite local terms.
struct MpsbReplicate {
    TauCurve curve;
    std::vector<std::uint32_t> infinite_terms;   ///< local unrelated count 0, related > 0
    std::vector<std::uint32_t> undefined_terms;  ///< local 0/0 (NaN)

    /// True when every band value is finite.
    [[nodiscard]] bool fully_defined() const noexcept;
};

/// MPSB replicate: mean over the multiset of local tau ratios
/// (m_i(band,1)/m_i(band,0)) / (m_i(1)/m_i(0)). Non-finite local terms propagate: a band with
/// any NaN term is NaN, otherwise any infinite term makes it +inf. Never throws for
/// degenerate counts; failure is reported in the diagnostics.
[[nodiscard]] MpsbReplicate tau_mpsb_replicate(const MarkCounts& marks, std::span<const std::size_t> indices,
                                               const DistanceBandSet& bands, const RelatednessRule& rule);

}  // namespace taustat
