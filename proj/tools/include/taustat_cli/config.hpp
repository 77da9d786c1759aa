#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "taustat/bands.hpp"
#include "taustat/bootstrap.hpp"
#include "taustat/cases.hpp"
#include "taustat/interval.hpp"

namespace taustat::cli {

/// Every knob that influences an output document. Serialised verbatim into each result as
/// the "config" object; feeding that object back through --config reproduces the run.
struct AnalysisConfig {
    std::filesystem::path input;
    RelatednessRule rule;
    std::string band_spec = "overlapping";  ///< "overlapping", "non-overlapping" or "lo:hi,lo:hi,..."
    std::size_t n_sims = 2500;
    std::size_t n_boot = 2500;
    BootstrapMethod method = BootstrapMethod::Mmpsb;
    CiMethod ci_method = CiMethod::Bca;
    double coverage = 0.95;
    double alpha = 0.05;
    /// Previously reported clustering range that D-hat is compared with on the areal scale.
    double reference_range = 30.0;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";

    [[nodiscard]] DistanceBandSet bands() const;
};

[[nodiscard]] DistanceBandSet resolve_bands(const std::string& spec);

[[nodiscard]] nlohmann::ordered_json to_json(const AnalysisConfig& cfg);
/// Accepts either a bare config object or a result document carrying one under "config".
[[nodiscard]] AnalysisConfig config_from_json(const nlohmann::json& doc);

}  // namespace taustat::cli
