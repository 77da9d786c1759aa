#include "taustat_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "taustat/bootstrap.hpp"
#include "taustat/csv.hpp"
#include "taustat/error.hpp"
#include "taustat/interval.hpp"
#include "taustat/parallel.hpp"
#include "taustat/stats.hpp"
#include "taustat/tau.hpp"

namespace taustat::cli {

namespace {

std::string_view direction_name(Direction d) { return d == Direction::Above ? "above" : "below"; }

Json exceedance_json(const std::vector<ExceedanceRegion>& regions, const DistanceBandSet& bands) {
    Json out = Json::array();
    for (const auto& r : regions) {
        out.push_back({{"direction", std::string(direction_name(r.direction))},
                       {"first_band", r.first_band},
                       {"last_band", r.last_band},
                       {"from_midpoint", bands.midpoints()[r.first_band]},
                       {"to_midpoint", bands.midpoints()[r.last_band]},
                       {"d_low", bands[r.first_band].d_low},
                       {"d_high", number_or_null(bands[r.last_band].d_high)}});
    }
    return out;
}

Json values_json(std::span<const double> values) {
    Json out = Json::array();
    for (const double v : values) out.push_back(number_or_null(v));
    return out;
}

Json ci_json(const Ci& ci, CiMethod method, double coverage) {
    return {{"method", std::string(to_string(method))},
            {"coverage", coverage},
            {"low", number_or_null(ci.low)},
            {"high", number_or_null(ci.high)}};
}

void add_warnings(Json& doc, const std::vector<std::string>& warnings) {
    Json& w = doc["warnings"];
    if (w.is_null()) w = Json::array();
    for (const auto& s : warnings) w.push_back(s);
}

std::filesystem::path out_path(const AnalysisConfig& cfg, std::string_view name) { return cfg.out_dir / name; }

double sample_skewness(std::span<const double> x) {
    if (x.size() < 3) return std::numeric_limits<double>::quiet_NaN();
    const double m = stats::mean(x);
    double m2 = 0.0, m3 = 0.0;
    for (const double v : x) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= double(x.size());
    m3 /= double(x.size());
    return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

std::string rule_text(const RelatednessRule& r) {
    std::ostringstream os;
    os << (r.directional ? "directional" : "symmetric") << " [" << format_double(r.t_lower) << ", "
       << format_double(r.t_upper) << "]";
    return os.str();
}

}  // namespace

std::vector<ExceedanceRegion> exceedance_from_json(const Json& result) {
    std::vector<ExceedanceRegion> out;
    for (const auto& r : result.at("exceedance")) {
        const auto dir = r.at("direction").get<std::string>();
        out.push_back({r.at("first_band").get<std::size_t>(), r.at("last_band").get<std::size_t>(),
                       dir == "above" ? Direction::Above : Direction::Below});
    }
    return out;
}

Json cmd_envelope_test(const AnalysisConfig& cfg, const RunOptions& opt) {
    const CaseSet cases = ingest_csv(cfg.input);
    const DistanceBandSet bands = cfg.bands();
    const RngPolicy rng{cfg.seed};
    const unsigned threads = resolve_threads(opt.threads);

    const TauCurve observed = tau_point_estimate(cases, cfg.rule, bands);
    const auto sims = simulate_null(cases, cfg.rule, bands, cfg.n_sims, rng, threads);
    const auto test = extreme_rank_envelope(observed, sims, cfg.alpha);
    const auto erl = erl_refinement(observed, sims);

    Json doc = make_document("envelope-test", cfg, cases);
    Json& res = doc["result"];
    res["alpha"] = cfg.alpha;
    res["n_sims"] = test.n_sims;
    res["p_interval"] = {test.p_minus, test.p_plus};
    res["observed_extreme_rank"] = test.extreme_ranks.front();
    res["critical_rank"] = test.critical_rank;
    res["erl_p_value"] = erl.p_value;
    res["clustering_evidence"] = test.has_region(Direction::Above);
    res["inhibition_evidence"] = test.has_region(Direction::Below);
    res["exceedance"] = exceedance_json(test.exceedance, bands);
    res["dropped_bands"] = test.dropped_bands;
    Json per_band = Json::array();
    for (std::size_t k = 0; k < bands.size(); ++k) {
        per_band.push_back({{"d_low", bands[k].d_low},
                            {"d_high", number_or_null(bands[k].d_high)},
                            {"midpoint", bands.midpoints()[k]},
                            {"observed", number_or_null(observed.values[k])},
                            {"lower", number_or_null(test.lower[k])},
                            {"upper", number_or_null(test.upper[k])},
                            {"median", number_or_null(test.median[k])}});
    }
    res["bands"] = std::move(per_band);
    std::vector<std::string> warnings;
    if (!test.dropped_bands.empty()) {
        warnings.push_back(std::to_string(test.dropped_bands.size()) +
                           " band(s) undefined in at least one curve were dropped from the test");
    }
    add_warnings(doc, warnings);
    write_json(out_path(cfg, "envelope_test.json"), doc);

    std::ostringstream csv;
    csv << "midpoint,d_low,d_high,observed,lower,upper,median\n";
    for (std::size_t k = 0; k < bands.size(); ++k) {
        csv << csv_number(bands.midpoints()[k]) << ',' << csv_number(bands[k].d_low) << ','
            << csv_number(bands[k].d_high) << ',' << csv_number(observed.values[k]) << ','
            << csv_number(test.lower[k]) << ',' << csv_number(test.upper[k]) << ',' << csv_number(test.median[k])
            << '\n';
    }
    write_file(out_path(cfg, "envelope_test.csv"), csv.str());

    if (opt.svg) {
        SvgPlot plot("Global envelope test, " + rule_text(cfg.rule), "distance (m)", "tau");
        plot.ribbon(bands.midpoints(), test.lower, test.upper, "#9ecae1");
        plot.line(bands.midpoints(), test.median, "#6baed6", true);
        plot.line(bands.midpoints(), observed.values, "black");
        plot.hline(1.0, "grey");
        write_file(out_path(cfg, "envelope_test.svg"), plot.render());
    }
    return doc;
}

namespace {

struct GateOutcome {
    Json summary;
    std::vector<ExceedanceRegion> exceedance;
    std::vector<std::string> warnings;
};

GateOutcome check_evidence(const AnalysisConfig& cfg, const CaseSet& cases, const EvidenceGate& gate) {
    GateOutcome out;
    std::string problem;
    if (!gate.evidence) {
        problem = "no envelope-test result was supplied (--evidence)";
        out.summary = {{"path", nullptr}, {"verified", false}};
    } else {
        const Json ev = read_json(*gate.evidence);
        out.summary = {{"path", gate.evidence->generic_string()}, {"verified", false}};
        const Json expect = to_json(cfg);
        if (ev.value("command", "") != "envelope-test" || !ev.contains("result")) {
            problem = "evidence file is not an envelope-test result";
        } else if (ev.at("data").at("fingerprint") != data_fingerprint(cases)) {
            problem = "evidence was computed on different data";
        } else if (ev.at("config").at("relatedness") != expect.at("relatedness")) {
            problem = "evidence used a different relatedness rule";
        } else if (ev.at("config").at("bands") != expect.at("bands")) {
            problem = "evidence used a different distance band set";
        } else {
            const Json& res = ev.at("result");
            out.summary["p_interval"] = res.at("p_interval");
            out.summary["clustering_evidence"] = res.at("clustering_evidence");
            out.exceedance = exceedance_from_json(res);
            if (!res.at("clustering_evidence").get<bool>()) {
                problem = "the envelope test found no region above the null envelope";
            } else {
                out.summary["verified"] = true;
            }
        }
    }
    out.summary["override"] = !problem.empty() && gate.allow_unverified;
    if (!problem.empty()) {
        if (!gate.allow_unverified) {
            throw WorkflowRefused("refusing to estimate a clustering range: " + problem +
                                  ". Run envelope-test first, or pass --allow-unverified-clustering");
        }
        out.warnings.push_back("clustering not verified by an envelope test (" + problem +
                               "); estimates are not conditional on evidence of clustering");
    }
    return out;
}

}  // namespace

Json cmd_estimate_range(const AnalysisConfig& cfg, const EvidenceGate& gate, const RunOptions& opt) {
    const CaseSet cases = ingest_csv(cfg.input);
    const DistanceBandSet bands = cfg.bands();
    GateOutcome evidence = check_evidence(cfg, cases, gate);

    const RngPolicy rng{cfg.seed};
    const auto run = run_bootstrap(cases, cfg.rule, bands, cfg.method, cfg.n_boot, rng, resolve_threads(opt.threads));
    const auto est = estimate_clustering_range(run, cfg.ci_method, cfg.coverage);

    Json doc = make_document("estimate-range", cfg, cases);
    Json& res = doc["result"];
    res["method"] = std::string(to_string(cfg.method));
    res["n_boot"] = cfg.n_boot;
    res["d_hat"] = est.d_hat ? Json(*est.d_hat) : Json(nullptr);
    res["ci"] = ci_json(est.ci, est.ci_method, est.coverage);
    res["proportion_used"] = est.proportion_used();
    res["valid"] = est.proportion_used() == 1.0;
    res["crossings"] = {{"total", est.crossings.total},
                        {"used", est.crossings.distances.size()},
                        {"started_at_or_below", est.crossings.started_at_or_below},
                        {"never_crossed", est.crossings.never_crossed},
                        {"failed", est.crossings.failed}};
    if (est.bca) {
        res["bca"] = {{"z0", number_or_null(est.bca->z0)},
                      {"acceleration", number_or_null(est.bca->acceleration)},
                      {"level_low", est.bca->level_low},
                      {"level_high", est.bca->level_high},
                      {"fell_back_to_percentile", est.bca->fell_back_to_percentile}};
    } else {
        res["bca"] = nullptr;
    }
    const double skew = sample_skewness(est.crossings.distances);
    Json skew_json = {{"mean", est.sample_mean},
                      {"median", est.sample_median},
                      {"skewness", number_or_null(skew)},
                      {"direction", std::isnan(skew) || skew == 0.0 ? "none" : (skew > 0.0 ? "positive" : "negative")}};
    skew_json["mean_minus_d_hat"] = est.d_hat ? Json(est.sample_mean - *est.d_hat) : Json(nullptr);
    skew_json["median_minus_d_hat"] = est.d_hat ? Json(est.sample_median - *est.d_hat) : Json(nullptr);
    res["skew"] = std::move(skew_json);
    res["bimodality"] = {{"coefficient", number_or_null(est.bimodality)},
                         {"threshold", stats::kBimodalityThreshold},
                         {"flagged", est.bimodal}};
    res["retention"] = {{"mean_pair_retention", run.mean_retention()},
                        {"mean_distinct_cases", run.mean_distinct_cases()}};
    Json areal = {{"reference_range", cfg.reference_range}};
    areal["d_hat"] = est.d_hat ? Json(areal_ratio(*est.d_hat, cfg.reference_range)) : Json(nullptr);
    areal["ci_low"] = number_or_null(areal_ratio(est.ci.low, cfg.reference_range));
    areal["ci_high"] = number_or_null(areal_ratio(est.ci.high, cfg.reference_range));
    res["areal_ratio"] = std::move(areal);

    std::vector<std::string> warnings = evidence.warnings;
    warnings.insert(warnings.end(), est.warnings.begin(), est.warnings.end());
    res["inhibition"] = nullptr;
    if (std::any_of(evidence.exceedance.begin(), evidence.exceedance.end(),
                    [](const ExceedanceRegion& r) { return r.direction == Direction::Below; })) {
        EnvelopeTestResult test;
        test.observed = run.point_estimate;
        test.exceedance = evidence.exceedance;
        try {
            const auto inh = estimate_inhibition(run, test, cfg.ci_method, cfg.coverage);
            res["inhibition"] = {{"start", inh.start},
                                 {"ci", ci_json(inh.ci, inh.ci_method, cfg.coverage)},
                                 {"proportion_used", inh.proportion_used()}};
            warnings.insert(warnings.end(), inh.warnings.begin(), inh.warnings.end());
        } catch (const Error& e) {
            warnings.push_back(std::string("inhibition startpoint not estimated: ") + e.what());
        }
    }
    doc["evidence"] = evidence.summary;
    add_warnings(doc, warnings);
    write_json(out_path(cfg, "estimate_range.json"), doc);

    std::ostringstream crossings;
    crossings << "replicate,distance\n";
    for (std::size_t i = 0; i < est.crossings.distances.size(); ++i) {
        crossings << est.crossings.replicate[i] << ',' << csv_number(est.crossings.distances[i]) << '\n';
    }
    write_file(out_path(cfg, "crossings.csv"), crossings.str());

    // 2 m histogram bins aligned to even distances.
    constexpr double kBin = 2.0;
    std::map<long long, std::size_t> bins;
    for (const double d : est.crossings.distances) ++bins[static_cast<long long>(std::floor(d / kBin))];
    std::ostringstream hist;
    hist << "bin_low,bin_high,count\n";
    std::vector<double> left, right, height;
    if (!bins.empty()) {
        for (long long b = bins.begin()->first; b <= bins.rbegin()->first; ++b) {
            const auto it = bins.find(b);
            const std::size_t c = it == bins.end() ? 0 : it->second;
            hist << csv_number(double(b) * kBin) << ',' << csv_number(double(b + 1) * kBin) << ',' << c << '\n';
            left.push_back(double(b) * kBin);
            right.push_back(double(b + 1) * kBin);
            height.push_back(double(c));
        }
    }
    write_file(out_path(cfg, "crossing_histogram.csv"), hist.str());

    std::optional<CentralEnvelope> env;
    try {
        env = central_envelope(run, cfg.coverage);
    } catch (const Error& e) {
        add_warnings(doc, {std::string("bootstrap envelope not available: ") + e.what()});
    }
    std::ostringstream plot_csv;
    plot_csv << "midpoint,point_estimate,envelope_lower,envelope_upper\n";
    for (std::size_t k = 0; k < bands.size(); ++k) {
        plot_csv << csv_number(bands.midpoints()[k]) << ',' << csv_number(run.point_estimate.values[k]) << ','
                 << csv_number(env ? env->lower[k] : NAN) << ',' << csv_number(env ? env->upper[k] : NAN) << '\n';
    }
    write_file(out_path(cfg, "range_plot.csv"), plot_csv.str());

    if (opt.svg) {
        SvgPlot plot(std::string(to_string(cfg.method)) + " bootstrap, " + rule_text(cfg.rule), "distance (m)",
                     "tau");
        if (env) plot.ribbon(bands.midpoints(), env->lower, env->upper, "#fdae6b");
        plot.line(bands.midpoints(), run.point_estimate.values, "black");
        plot.hline(1.0, "grey");
        if (est.d_hat) plot.vline(*est.d_hat, "red");
        plot.vline(est.ci.low, "#d94801");
        plot.vline(est.ci.high, "#d94801");
        write_file(out_path(cfg, "range_plot.svg"), plot.render());
        SvgPlot h("Bootstrap crossing distances", "distance (m)", "replicates");
        h.bars(left, right, height, "#6baed6");
        if (est.d_hat) h.vline(*est.d_hat, "red");
        write_file(out_path(cfg, "crossing_histogram.svg"), h.render());
    }
    return doc;
}

Json cmd_bootstrap(const AnalysisConfig& cfg, const RunOptions& opt) {
    const CaseSet cases = ingest_csv(cfg.input);
    const DistanceBandSet bands = cfg.bands();
    const RngPolicy rng{cfg.seed};
    const auto run = run_bootstrap(cases, cfg.rule, bands, cfg.method, cfg.n_boot, rng, resolve_threads(opt.threads));

    Json doc = make_document("bootstrap", cfg, cases);
    Json& res = doc["result"];
    res["method"] = std::string(to_string(cfg.method));
    res["n_boot"] = run.size();
    res["failed"] = run.failed_count();
    res["fully_defined"] = run.fully_defined_count();
    res["usable_fraction"] = run.size() == 0 ? 0.0 : double(run.fully_defined_count()) / double(run.size());
    res["mean_pair_retention"] = run.mean_retention();
    res["mean_distinct_cases"] = run.mean_distinct_cases();
    if (cfg.method == BootstrapMethod::Mpsb) {
        std::uint64_t inf_terms = 0, nan_terms = 0;
        for (const auto v : run.infinite_terms) inf_terms += v;
        for (const auto v : run.undefined_terms) nan_terms += v;
        res["mpsb"] = {{"infinite_local_terms", inf_terms}, {"undefined_local_terms", nan_terms}};
    }
    res["point_estimate"] = values_json(run.point_estimate.values);
    std::vector<std::string> warnings;
    std::optional<CentralEnvelope> env;
    try {
        env = central_envelope(run, cfg.coverage);
        res["envelope"] = {{"level", env->level}, {"lower", values_json(env->lower)}, {"upper", values_json(env->upper)}};
    } catch (const Error& e) {
        res["envelope"] = nullptr;
        warnings.push_back(std::string("bootstrap envelope not available: ") + e.what());
    }
    if (cfg.method == BootstrapMethod::Mpsb) {
        warnings.push_back("mpsb averages local ratios and is numerically fragile; mmpsb is recommended");
    }
    add_warnings(doc, warnings);
    write_json(out_path(cfg, "bootstrap.json"), doc);

    std::ostringstream curves;
    curves << "replicate";
    for (const double m : bands.midpoints()) curves << ",tau_" << csv_number(m);
    curves << '\n';
    for (std::size_t r = 0; r < run.size(); ++r) {
        curves << r;
        for (const double v : run.curves[r].values) curves << ',' << csv_number(v);
        curves << '\n';
    }
    write_file(out_path(cfg, "bootstrap_curves.csv"), curves.str());

    std::ostringstream envelope;
    envelope << "midpoint,point_estimate,envelope_lower,envelope_upper\n";
    for (std::size_t k = 0; k < bands.size(); ++k) {
        envelope << csv_number(bands.midpoints()[k]) << ',' << csv_number(run.point_estimate.values[k]) << ','
                 << csv_number(env ? env->lower[k] : NAN) << ',' << csv_number(env ? env->upper[k] : NAN) << '\n';
    }
    write_file(out_path(cfg, "bootstrap_envelope.csv"), envelope.str());
    if (opt.svg) {
        SvgPlot plot(std::string(to_string(cfg.method)) + " bootstrap replicates", "distance (m)", "tau");
        if (env) plot.ribbon(bands.midpoints(), env->lower, env->upper, "#bcbddc");
        plot.line(bands.midpoints(), run.point_estimate.values, "black");
        plot.hline(1.0, "grey");
        write_file(out_path(cfg, "bootstrap_envelope.svg"), plot.render());
    }
    return doc;
}

Json cmd_plot(const AnalysisConfig& cfg, PlotKind kind, const RunOptions& opt) {
    const CaseSet cases = ingest_csv(cfg.input);
    Json doc = make_document("plot", cfg, cases);
    Json& res = doc["result"];
    if (kind == PlotKind::EpidemicCurve) {
        std::map<long long, std::size_t> days;
        for (const auto& c : cases) ++days[static_cast<long long>(std::floor(c.onset))];
        std::ostringstream csv;
        csv << "day,cases\n";
        std::vector<double> left, right, height;
        for (long long d = days.begin()->first; d <= days.rbegin()->first; ++d) {
            const auto it = days.find(d);
            const std::size_t c = it == days.end() ? 0 : it->second;
            csv << d << ',' << c << '\n';
            left.push_back(double(d));
            right.push_back(double(d + 1));
            height.push_back(double(c));
        }
        write_file(out_path(cfg, "epicurve.csv"), csv.str());
        res["kind"] = "epicurve";
        res["first_day"] = days.begin()->first;
        res["last_day"] = days.rbegin()->first;
        res["total_cases"] = cases.size();
        if (opt.svg) {
            SvgPlot plot("Epidemic curve", "onset day", "cases");
            plot.bars(left, right, height, "#636363");
            write_file(out_path(cfg, "epicurve.svg"), plot.render());
        }
    } else {
        const RngPolicy rng{cfg.seed};
        std::ostringstream csv;
        csv << "id,x,y,onset,x_jittered,y_jittered\n";
        std::vector<double> xs, ys;
        std::vector<std::string> colours;
        double t0 = cases[0].onset, t1 = cases[0].onset;
        for (const auto& c : cases) {
            t0 = std::min(t0, c.onset);
            t1 = std::max(t1, c.onset);
        }
        double max_shift = 0.0;
        for (std::size_t i = 0; i < cases.size(); ++i) {
            auto s = rng.stream(StreamPurpose::PlotJitter, i);
            const double jx = cases[i].x + s.uniform(-kPlotJitter, kPlotJitter);
            const double jy = cases[i].y + s.uniform(-kPlotJitter, kPlotJitter);
            max_shift = std::max({max_shift, std::abs(jx - cases[i].x), std::abs(jy - cases[i].y)});
            csv << cases[i].id << ',' << csv_number(cases[i].x) << ',' << csv_number(cases[i].y) << ','
                << csv_number(cases[i].onset) << ',' << csv_number(jx) << ',' << csv_number(jy) << '\n';
            xs.push_back(jx);
            ys.push_back(jy);
            // Early onsets blue, late onsets red.
            const double f = t1 > t0 ? (cases[i].onset - t0) / (t1 - t0) : 0.0;
            std::ostringstream col;
            col << "rgb(" << int(std::lround(255 * f)) << ",0," << int(std::lround(255 * (1 - f))) << ")";
            colours.push_back(col.str());
        }
        write_file(out_path(cfg, "spacetime.csv"), csv.str());
        res["kind"] = "spacetime";
        res["jitter_bound"] = kPlotJitter;
        res["max_jitter"] = max_shift;
        if (opt.svg) {
            SvgPlot plot("Case locations coloured by onset (jittered)", "x (m)", "y (m)");
            plot.points(xs, ys, colours);
            write_file(out_path(cfg, "spacetime.svg"), plot.render());
        }
    }
    write_json(out_path(cfg, kind == PlotKind::EpidemicCurve ? "epicurve.json" : "spacetime.json"), doc);
    return doc;
}

}  // namespace taustat::cli
