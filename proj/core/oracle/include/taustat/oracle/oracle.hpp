#pragma once

// Brute-force reference implementations. Deliberately naive: no pair table, no binning,
// no caching. Used as ground truth by the test suites and `taustat oracle-check`.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "taustat/bands.hpp"
#include "taustat/cases.hpp"
#include "taustat/pair_table.hpp"
#include "taustat/tau_curve.hpp"

namespace taustat::oracle {

[[nodiscard]] BandCounts band_counts(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands);

[[nodiscard]] MarkCounts mark_counts(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands);

/// Double sum over ordered pairs per band, then theta(band) / theta(0, inf).
[[nodiscard]] TauCurve tau(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands);

/// Materialises the resampled data set and sums over slot pairs p != q holding different
/// original cases.
[[nodiscard]] TauCurve tau_risb(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                                std::span<const std::size_t> indices);

/// For each resampled case, counts related/unrelated partners among all other original
/// cases, sums over the multiset, and forms the odds ratio.
[[nodiscard]] TauCurve tau_mmpsb(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                                 std::span<const std::size_t> indices);

/// Mean over the multiset of local tau ratios.
[[nodiscard]] TauCurve tau_mpsb(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                                std::span<const std::size_t> indices);

/// Extreme ranks by direct counting of smaller/larger values at every band.
[[nodiscard]] std::vector<std::size_t> envelope_ranks(std::span<const std::vector<double>> rows);

/// Linear-interpolation quantile computed straight from the definition.
[[nodiscard]] double quantile(std::vector<double> sample, double p);

}  // namespace taustat::oracle
