#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taustat/cases.hpp"
#include "taustat/null_test.hpp"
#include "taustat_cli/config.hpp"
#include "taustat_cli/report.hpp"

namespace taustat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
/// estimate-range was asked to run without evidence against "no clustering".
inline constexpr int kExitWorkflowRefused = 3;

class WorkflowRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    unsigned threads = 0;  ///< 0: TAUSTAT_THREADS or hardware concurrency
    bool svg = false;
};

/// Null envelope test. Writes envelope_test.json, envelope_test.csv and optionally
/// envelope_test.svg into cfg.out_dir; returns the JSON document.
Json cmd_envelope_test(const AnalysisConfig& cfg, const RunOptions& opt);

struct EvidenceGate {
    std::optional<std::filesystem::path> evidence;  ///< envelope_test.json of an earlier run
    bool allow_unverified = false;
};

/// Clustering range estimate. Throws WorkflowRefused unless `gate` holds an envelope-test
/// document for the same data, relatedness rule and bands showing an above-envelope region,
/// or the override is set. Writes estimate_range.json, crossings.csv,
/// crossing_histogram.csv, range_plot.csv and optionally range_plot.svg.
Json cmd_estimate_range(const AnalysisConfig& cfg, const EvidenceGate& gate, const RunOptions& opt);

/// Bootstrap replicates and their diagnostics. Writes bootstrap.json, bootstrap_curves.csv
/// and bootstrap_envelope.csv.
Json cmd_bootstrap(const AnalysisConfig& cfg, const RunOptions& opt);

enum class PlotKind { EpidemicCurve, SpaceTime };

/// epicurve.csv/.json (daily counts) or spacetime.csv/.json (coordinates jittered by up to 5 m in x and
/// y from the plot-jitter stream). Jitter never reaches the analysis.
Json cmd_plot(const AnalysisConfig& cfg, PlotKind kind, const RunOptions& opt);

inline constexpr double kPlotJitter = 5.0;

/// Turns the "result" part of an envelope-test document back into exceedance regions.
[[nodiscard]] std::vector<ExceedanceRegion> exceedance_from_json(const Json& result);

}  // namespace taustat::cli
