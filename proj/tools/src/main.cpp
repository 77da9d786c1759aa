// taustat: tau-statistic clustering analysis from the command line.

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "taustat/csv.hpp"
#include "taustat/error.hpp"
#include "taustat/interval.hpp"
#include "taustat/synthetic.hpp"
#include "taustat_cli/calibration.hpp"
#include "taustat_cli/commands.hpp"
#include "taustat_cli/config.hpp"
#include "taustat_cli/oracle_check.hpp"
#include "taustat_cli/report.hpp"

namespace {

using namespace taustat;
using namespace taustat::cli;

struct Flags {
    std::string config;
    std::string input;
    double t_lower = std::numeric_limits<double>::quiet_NaN();
    double t_upper = std::numeric_limits<double>::quiet_NaN();
    std::string relatedness;
    std::string bands = "overlapping";
    std::size_t n_sims = 2500;
    std::size_t n_boot = 2500;
    std::string method = "mmpsb";
    bool ack_mpsb = false;
    std::string ci = "bca";
    double coverage = 0.95;
    double alpha = 0.05;
    double reference_range = 30.0;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    unsigned threads = 0;
    bool svg = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Registered {
    CLI::Option* input;
    CLI::Option* t_lower;
    CLI::Option* t_upper;
    CLI::Option* relatedness;
    CLI::Option* bands;
    CLI::Option* n_sims;
    CLI::Option* n_boot;
    CLI::Option* method;
    CLI::Option* ci;
    CLI::Option* coverage;
    CLI::Option* alpha;
    CLI::Option* reference_range;
    CLI::Option* seed;
    CLI::Option* out_dir;
};

Registered add_analysis_options(CLI::App* app, Flags& f) {
    Registered r{};
    app->add_option("--config", f.config, "JSON config (or any result document) to re-run; flags given explicitly override it");
    r.input = app->add_option("-i,--input", f.input, "case line-list CSV with columns id,x,y,onset");
    r.t_lower = app->add_option("--t-lower", f.t_lower, "lower bound of the relatedness window (days)");
    r.t_upper = app->add_option("--t-upper", f.t_upper, "upper bound of the relatedness window (days)");
    r.relatedness = app->add_option("--relatedness", f.relatedness, "directional: t_j - t_i in window; symmetric: |t_j - t_i| in window")
                        ->check(CLI::IsMember({"directional", "symmetric"}));
    r.bands = app->add_option("--bands", f.bands, "overlapping, non-overlapping, or an explicit list lo:hi,lo:hi,...")->capture_default_str();
    r.n_sims = app->add_option("--n-sims", f.n_sims, "null permutations for the envelope test")->capture_default_str();
    r.n_boot = app->add_option("--n-boot", f.n_boot, "bootstrap replicates")->capture_default_str();
    r.method = app->add_option("--method", f.method, "bootstrap method")->capture_default_str()->check(CLI::IsMember({"risb", "mmpsb", "mpsb"}));
    app->add_flag("--i-understand-not-recommended", f.ack_mpsb, "required to use --method mpsb");
    r.ci = app->add_option("--ci", f.ci, "confidence interval method")->capture_default_str()->check(CLI::IsMember({"bca", "percentile"}));
    r.coverage = app->add_option("--coverage", f.coverage, "CI coverage")->capture_default_str()->check(CLI::Range(0.5, 0.9999));
    r.alpha = app->add_option("--alpha", f.alpha, "envelope test level")->capture_default_str()->check(CLI::Range(0.0001, 0.5));
    r.reference_range = app->add_option("--reference-range", f.reference_range, "earlier clustering range for the areal-ratio report (m)")->capture_default_str();
    r.seed = app->add_option("--seed", f.seed, "master seed")->capture_default_str();
    r.out_dir = app->add_option("--out-dir", f.out_dir, "output directory")->capture_default_str();
    app->add_option("--threads", f.threads, "worker threads (default: TAUSTAT_THREADS or all cores)");
    app->add_flag("--svg", f.svg, "also write SVG renderings of the plots");
    return r;
}

AnalysisConfig build_config(const Flags& f, const Registered& r, bool needs_rule) {
    AnalysisConfig cfg;
    const bool from_file = !f.config.empty();
    if (from_file) cfg = config_from_json(read_json(f.config));
    auto given = [&](CLI::Option* o) { return !from_file || o->count() > 0; };

    if (given(r.input)) cfg.input = f.input;
    if (cfg.input.empty()) throw UsageError("--input is required");
    if (r.t_lower->count() || r.t_upper->count() || r.relatedness->count() || !from_file) {
        const bool have_all = r.relatedness->count() && r.t_lower->count() && r.t_upper->count();
        if (have_all) {
            cfg.rule = RelatednessRule::make(f.t_lower, f.t_upper, f.relatedness == "directional");
        } else if (needs_rule || r.t_lower->count() || r.t_upper->count() || r.relatedness->count()) {
            throw UsageError("--relatedness {directional|symmetric}, --t-lower and --t-upper must all be given");
        }
    }
    if (given(r.bands)) cfg.band_spec = f.bands;
    (void)resolve_bands(cfg.band_spec);  // validate early
    if (given(r.n_sims)) cfg.n_sims = f.n_sims;
    if (given(r.n_boot)) cfg.n_boot = f.n_boot;
    if (given(r.method)) cfg.method = parse_bootstrap_method(f.method);
    if (given(r.ci)) cfg.ci_method = parse_ci_method(f.ci);
    if (given(r.coverage)) cfg.coverage = f.coverage;
    if (given(r.alpha)) cfg.alpha = f.alpha;
    if (given(r.reference_range)) cfg.reference_range = f.reference_range;
    if (given(r.seed)) cfg.seed = f.seed;
    if (given(r.out_dir)) cfg.out_dir = f.out_dir;
    if (cfg.method == BootstrapMethod::Mpsb && !f.ack_mpsb) {
        throw UsageError("--method mpsb averages unstable local ratios and is not recommended; "
                         "pass --i-understand-not-recommended to use it anyway");
    }
    return cfg;
}

std::string fmt(const Json& v) {
    return v.is_number() ? format_double(v.get<double>()) : v.dump();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"taustat: spatiotemporal clustering inference with the tau statistic"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Flags f;
    auto* env = app.add_subcommand("envelope-test", "global envelope test of 'no clustering' by time-mark permutation");
    const auto env_opts = add_analysis_options(env, f);

    auto* range = app.add_subcommand("estimate-range", "clustering range D-hat with a bootstrap CI (after envelope-test)");
    const auto range_opts = add_analysis_options(range, f);
    std::string evidence;
    bool allow_unverified = false;
    range->add_option("--evidence", evidence, "envelope_test.json from an earlier envelope-test run");
    range->add_flag("--allow-unverified-clustering", allow_unverified,
                    "estimate without evidence of clustering (not recommended)");

    auto* boot = app.add_subcommand("bootstrap", "bootstrap replicate curves and diagnostics");
    const auto boot_opts = add_analysis_options(boot, f);

    auto* plot = app.add_subcommand("plot", "epidemic curve or jittered space-time plot data");
    const auto plot_opts = add_analysis_options(plot, f);
    std::string kind;
    plot->add_option("--kind", kind, "epicurve or spacetime")->required()->check(CLI::IsMember({"epicurve", "spacetime"}));

    auto* oracle = app.add_subcommand("oracle-check", "compare the fast kernels with brute-force reference code");
    OracleCheckOptions oc;
    oracle->add_option("--instances", oc.instances, "random instances")->capture_default_str();
    oracle->add_option("--max-n", oc.max_n, "largest random case count")->capture_default_str();
    oracle->add_option("--seed", oc.seed, "seed for instance generation")->capture_default_str();
    std::string oracle_input;
    oracle->add_option("-i,--input", oracle_input, "also check this data set under the given relatedness rule");
    oracle->add_option("--t-lower", f.t_lower);
    oracle->add_option("--t-upper", f.t_upper);
    oracle->add_option("--relatedness", f.relatedness)->check(CLI::IsMember({"directional", "symmetric"}));
    oracle->add_option("--bands", f.bands, "")->capture_default_str();

    auto* calib = app.add_subcommand("calibrate", "search relatedness windows for a target clustering endpoint");
    std::string calib_input, calib_out = ".";
    std::string calib_bands = "overlapping";
    double target = 36.0;
    int max_days = 20;
    calib->add_option("-i,--input", calib_input, "case line-list CSV")->required();
    calib->add_option("--bands", calib_bands, "band set")->capture_default_str();
    calib->add_option("--target", target, "target D-hat (m)")->capture_default_str();
    calib->add_option("--max-days", max_days, "largest window bound to try (days)")->capture_default_str();
    calib->add_option("--out-dir", calib_out, "output directory")->capture_default_str();

    auto* synth = app.add_subcommand("synthetic", "write a synthetic outbreak line-list (for trying the tool)");
    SyntheticOutbreak outbreak;
    std::uint64_t synth_seed = 1;
    std::string synth_out;
    synth->add_option("--n", outbreak.cases, "case count")->capture_default_str();
    synth->add_option("--local", outbreak.local_transmission, "probability of local transmission")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--seed", synth_seed, "seed")->capture_default_str();
    synth->add_option("-o,--output", synth_out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunOptions run{f.threads, f.svg};
        if (env->parsed()) {
            const auto doc = cmd_envelope_test(build_config(f, env_opts, true), run);
            const auto& res = doc.at("result");
            std::cout << "p-value interval: [" << fmt(res.at("p_interval")[0]) << ", " << fmt(res.at("p_interval")[1])
                      << "]\n";
            for (const auto& r : res.at("exceedance")) {
                std::cout << r.at("direction").get<std::string>() << " envelope: midpoints "
                          << fmt(r.at("from_midpoint")) << " to " << fmt(r.at("to_midpoint")) << " m\n";
            }
            std::cout << "clustering evidence: " << (res.at("clustering_evidence").get<bool>() ? "yes" : "no") << '\n';
        } else if (range->parsed()) {
            EvidenceGate gate;
            if (!evidence.empty()) gate.evidence = evidence;
            gate.allow_unverified = allow_unverified;
            const auto doc = cmd_estimate_range(build_config(f, range_opts, true), gate, run);
            const auto& res = doc.at("result");
            std::cout << "D-hat: " << fmt(res.at("d_hat")) << " m\n"
                      << res.at("ci").at("method").get<std::string>() << ' ' << fmt(res.at("ci").at("coverage"))
                      << " CI: (" << fmt(res.at("ci").at("low")) << ", " << fmt(res.at("ci").at("high")) << ")\n"
                      << "proportion used: " << fmt(res.at("proportion_used")) << '\n';
        } else if (boot->parsed()) {
            const auto doc = cmd_bootstrap(build_config(f, boot_opts, true), run);
            const auto& res = doc.at("result");
            std::cout << "usable replicates: " << fmt(res.at("usable_fraction")) << '\n'
                      << "mean pair retention: " << fmt(res.at("mean_pair_retention")) << '\n';
        } else if (plot->parsed()) {
            const auto doc = cmd_plot(build_config(f, plot_opts, false),
                                      kind == "epicurve" ? PlotKind::EpidemicCurve : PlotKind::SpaceTime, run);
            std::cout << "wrote " << kind << " plot data\n";
        } else if (oracle->parsed()) {
            auto report = run_oracle_check(oc);
            if (!oracle_input.empty()) {
                if (f.relatedness.empty() || std::isnan(f.t_lower) || std::isnan(f.t_upper)) {
                    throw UsageError("--input needs --relatedness, --t-lower and --t-upper");
                }
                oracle_check_case_set(ingest_csv(oracle_input),
                                      RelatednessRule::make(f.t_lower, f.t_upper, f.relatedness == "directional"),
                                      resolve_bands(f.bands), oc.seed, oc.tolerance, report);
            }
            std::cout << report.instances << " random instances, " << report.comparisons << " comparisons, "
                      << report.failures.size() << " mismatches\n";
            for (const auto& m : report.failures) std::cout << "  " << m << '\n';
            return report.passed() ? kExitOk : kExitFailure;
        } else if (synth->parsed()) {
            auto stream = RngPolicy{synth_seed}.stream(StreamPurpose::Synthetic, 0);
            std::ostringstream csv;
            write_cases_csv(csv, synthetic_outbreak(outbreak, stream));
            write_file(synth_out, csv.str());
        } else if (calib->parsed()) {
            const auto cases = ingest_csv(calib_input);
            const auto result = calibrate_window(cases, resolve_bands(calib_bands), target, max_days);
            Json doc;
            doc["tool"] = "taustat";
            doc["version"] = std::string(kToolVersion);
            doc["command"] = "calibrate";
            doc["data"] = {{"input", calib_input}, {"n_cases", cases.size()}, {"fingerprint", data_fingerprint(cases)}};
            doc["bands"] = calib_bands;
            doc["target"] = target;
            Json all = Json::array();
            for (const auto& c : result.candidates) {
                all.push_back({{"mode", c.rule.directional ? "directional" : "symmetric"},
                               {"t_lower", c.rule.t_lower},
                               {"t_upper", c.rule.t_upper},
                               {"d_hat", c.d_hat ? Json(*c.d_hat) : Json(nullptr)}});
            }
            doc["best"] = result.best ? all[*result.best] : Json(nullptr);
            doc["candidates"] = std::move(all);
            write_json(std::filesystem::path(calib_out) / "calibration.json", doc);
            if (!result.best) {
                std::cout << "no window gives a downward crossing\n";
                return kExitFailure;
            }
            const auto& b = result.candidates[*result.best];
            std::cout << "best window: " << (b.rule.directional ? "directional" : "symmetric") << " ["
                      << format_double(b.rule.t_lower) << ", " << format_double(b.rule.t_upper)
                      << "], D-hat = " << format_double(*b.d_hat) << " m\n";
        }
    } catch (const WorkflowRefused& e) {
        std::cerr << "taustat: " << e.what() << '\n';
        return kExitWorkflowRefused;
    } catch (const UsageError& e) {
        std::cerr << "taustat: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "taustat: error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
