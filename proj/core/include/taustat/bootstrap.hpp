#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "taustat/cases.hpp"
#include "taustat/pair_table.hpp"
#include "taustat/rng.hpp"
#include "taustat/tau_curve.hpp"

namespace taustat {

enum class BootstrapMethod {
    Risb,   ///< resampled-index spatial bootstrap, self-comparisons dropped
    Mmpsb,  ///< modified marked point spatial bootstrap (resampled mark counts)
    Mpsb,   ///< marked point spatial bootstrap averaging local tau ratios; numerically fragile
};

[[nodiscard]] std::string_view to_string(BootstrapMethod m) noexcept;
/// Accepts "risb", "mmpsb", "mpsb" (case-insensitive). Throws Error{InvalidArgument}.
[[nodiscard]] BootstrapMethod parse_bootstrap_method(std::string_view text);

/// n uniform draws with replacement from the 0-based case indices [0, n).
[[nodiscard]] std::vector<std::size_t> resample_indices(std::size_t n, RngStream& stream);

/// Tau on the resampled data set, evaluated over ordered slot pairs (p, q), p != q, whose
/// slots hold different original cases.
[[nodiscard]] TauCurve tau_risb_replicate(const CaseSet& cases, const RelatednessRule& rule,
                                          const DistanceBandSet& bands, std::span<const std::size_t> indices);
[[nodiscard]] TauCurve tau_risb_replicate(const PairTable& table, const BandIndex& index,
                                          std::span<const std::size_t> indices);

/// Unique-information accounting for one replicate.
struct ReplicateStats {
    std::uint32_t distinct_cases = 0;
    /// Distinct ordered case pairs that inform the replicate: u(u-1) for RISB, u(n-1) for
    /// the marked point methods (each resampled case is compared with every other case).
    std::uint64_t unique_pairs = 0;
    double retention = 0.0;  ///< unique_pairs / (n(n-1))
};

struct BootstrapRun {
    BootstrapMethod method = BootstrapMethod::Mmpsb;
    std::size_t cases = 0;
    TauCurve point_estimate;
    std::vector<TauCurve> curves;
    std::vector<ReplicateStats> stats;
    /// DegenerateBackgroundOdds in this replicate; its curve is all-NaN.
    std::vector<std::uint8_t> failed;
    /// MPSB only: per replicate, total non-finite local terms over all bands.
    std::vector<std::uint32_t> infinite_terms;
    std::vector<std::uint32_t> undefined_terms;

    [[nodiscard]] std::size_t size() const noexcept { return curves.size(); }
    [[nodiscard]] std::size_t failed_count() const noexcept;
    /// Replicates whose curve is finite at every band.
    [[nodiscard]] std::size_t fully_defined_count() const noexcept;
    [[nodiscard]] double mean_retention() const noexcept;
    [[nodiscard]] double mean_distinct_cases() const noexcept;
};

/// N bootstrap replicates. Replicate k draws its resample from substream (Bootstrap, k), so
/// output is bit-identical for any thread count. A replicate whose background odds are
/// degenerate is recorded as failed rather than aborting the run.
[[nodiscard]] BootstrapRun run_bootstrap(const CaseSet& cases, const RelatednessRule& rule,
                                         const DistanceBandSet& bands, BootstrapMethod method, std::size_t n_boot,
                                         const RngPolicy& rng, unsigned threads = 0);

/// Pointwise percentile bounds of the replicate curves. For plotting and comparison only;
/// it is not a hypothesis test.
struct CentralEnvelope {
    double level = 0.95;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::size_t> used;  ///< defined replicate values per band
};

/// Throws Error{TooFewReplicates} if a band has fewer than 2 defined replicate values.
[[nodiscard]] CentralEnvelope central_envelope(const BootstrapRun& run, double level);

}  // namespace taustat
