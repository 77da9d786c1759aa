#include "taustat_cli/config.hpp"

#include "taustat/error.hpp"

namespace taustat::cli {

DistanceBandSet resolve_bands(const std::string& spec) {
    if (spec == "overlapping") return DistanceBandSet::overlapping();
    if (spec == "non-overlapping") return DistanceBandSet::non_overlapping();
    return DistanceBandSet::parse(spec);
}

DistanceBandSet AnalysisConfig::bands() const { return resolve_bands(band_spec); }

nlohmann::ordered_json to_json(const AnalysisConfig& cfg) {
    nlohmann::ordered_json j;
    j["input"] = cfg.input.generic_string();
    j["relatedness"] = {{"t_lower", cfg.rule.t_lower},
                        {"t_upper", cfg.rule.t_upper},
                        {"mode", cfg.rule.directional ? "directional" : "symmetric"}};
    j["bands"] = cfg.band_spec;
    j["n_sims"] = cfg.n_sims;
    j["n_boot"] = cfg.n_boot;
    j["method"] = std::string(to_string(cfg.method));
    j["ci_method"] = std::string(to_string(cfg.ci_method));
    j["coverage"] = cfg.coverage;
    j["alpha"] = cfg.alpha;
    j["reference_range"] = cfg.reference_range;
    j["seed"] = cfg.seed;
    j["out_dir"] = cfg.out_dir.generic_string();
    return j;
}

AnalysisConfig config_from_json(const nlohmann::json& doc) {
    const auto& j = doc.contains("config") ? doc.at("config") : doc;
    try {
        AnalysisConfig cfg;
        cfg.input = j.at("input").get<std::string>();
        const auto& rel = j.at("relatedness");
        const auto mode = rel.at("mode").get<std::string>();
        if (mode != "directional" && mode != "symmetric") {
            throw Error(ErrorCode::InvalidArgument, "relatedness mode must be directional or symmetric");
        }
        cfg.rule = RelatednessRule::make(rel.at("t_lower").get<double>(), rel.at("t_upper").get<double>(),
                                         mode == "directional");
        cfg.band_spec = j.at("bands").get<std::string>();
        cfg.n_sims = j.at("n_sims").get<std::size_t>();
        cfg.n_boot = j.at("n_boot").get<std::size_t>();
        cfg.method = parse_bootstrap_method(j.at("method").get<std::string>());
        cfg.ci_method = parse_ci_method(j.at("ci_method").get<std::string>());
        cfg.coverage = j.at("coverage").get<double>();
        cfg.alpha = j.at("alpha").get<double>();
        cfg.reference_range = j.at("reference_range").get<double>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.out_dir = j.at("out_dir").get<std::string>();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed config: ") + e.what());
    }
}

}  // namespace taustat::cli
