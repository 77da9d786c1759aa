#include "taustat/bootstrap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "taustat/error.hpp"
#include "taustat/parallel.hpp"
#include "taustat/stats.hpp"
#include "taustat/tau.hpp"

namespace taustat {

std::string_view to_string(BootstrapMethod m) noexcept {
    switch (m) {
        case BootstrapMethod::Risb: return "risb";
        case BootstrapMethod::Mmpsb: return "mmpsb";
        case BootstrapMethod::Mpsb: return "mpsb";
    }
    return "unknown";
}

BootstrapMethod parse_bootstrap_method(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (s == "risb") return BootstrapMethod::Risb;
    if (s == "mmpsb") return BootstrapMethod::Mmpsb;
    if (s == "mpsb") return BootstrapMethod::Mpsb;
    throw Error(ErrorCode::InvalidArgument, "unknown bootstrap method '" + s + "' (risb|mmpsb|mpsb)");
}

std::vector<std::size_t> resample_indices(std::size_t n, RngStream& stream) {
    if (n < 2) throw Error(ErrorCode::EmptyOrSingleton, "resampling needs n >= 2");
    std::vector<std::size_t> out(n);
    for (auto& i : out) i = static_cast<std::size_t>(stream.uniform_index(n));
    return out;
}

TauCurve tau_risb_replicate(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                            std::span<const std::size_t> indices) {
    const auto table = PairTable::build(cases, rule);
    return tau_risb_replicate(table, BandIndex(table, bands), indices);
}

TauCurve tau_risb_replicate(const PairTable& table, const BandIndex& index, std::span<const std::size_t> indices) {
    const auto c = multiplicities(table.size(), indices);
    return tau_odds(weighted_band_counts(table, index, c), index.bands(), table.rule(),
                    CurveSource::BootstrapReplicate);
}

std::size_t BootstrapRun::failed_count() const noexcept {
    return static_cast<std::size_t>(std::count(failed.begin(), failed.end(), std::uint8_t{1}));
}

std::size_t BootstrapRun::fully_defined_count() const noexcept {
    std::size_t k = 0;
    for (const auto& c : curves) k += (c.size() > 0 && c.defined_count() == c.size()) ? 1 : 0;
    return k;
}

double BootstrapRun::mean_retention() const noexcept {
    if (stats.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : stats) s += r.retention;
    return s / double(stats.size());
}

double BootstrapRun::mean_distinct_cases() const noexcept {
    if (stats.empty()) return 0.0;
    double s = 0.0;
    for (const auto& r : stats) s += r.distinct_cases;
    return s / double(stats.size());
}

BootstrapRun run_bootstrap(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                           BootstrapMethod method, std::size_t n_boot, const RngPolicy& rng, unsigned threads) {
    if (n_boot == 0) throw Error(ErrorCode::InvalidArgument, "bootstrap needs N >= 1");
    const std::size_t n = cases.size();
    const auto table = PairTable::build(cases, rule);
    const BandIndex index(table, bands);
    const bool marked = method != BootstrapMethod::Risb;
    MarkCounts marks;
    if (marked) marks = mark_counts(table, index);

    BootstrapRun run;
    run.method = method;
    run.cases = n;
    run.point_estimate = tau_odds(band_counts(table, index), bands, rule);
    run.curves.resize(n_boot);
    run.stats.resize(n_boot);
    run.failed.assign(n_boot, 0);
    if (method == BootstrapMethod::Mpsb) {
        run.infinite_terms.assign(n_boot, 0);
        run.undefined_terms.assign(n_boot, 0);
    }
    const double all_pairs = double(n) * double(n - 1);

    parallel_for(n_boot, resolve_threads(threads), [&](std::size_t k) {
        auto stream = rng.stream(StreamPurpose::Bootstrap, k);
        const auto idx = resample_indices(n, stream);
        std::uint32_t distinct = 0;
        {
            std::vector<std::uint8_t> seen(n, 0);
            for (std::size_t i : idx) {
                if (!seen[i]) {
                    seen[i] = 1;
                    ++distinct;
                }
            }
        }
        auto& st = run.stats[k];
        st.distinct_cases = distinct;
        st.unique_pairs = marked ? std::uint64_t(distinct) * (n - 1) : std::uint64_t(distinct) * (distinct - 1);
        st.retention = double(st.unique_pairs) / all_pairs;

        try {
            switch (method) {
                case BootstrapMethod::Risb:
                    run.curves[k] = tau_risb_replicate(table, index, idx);
                    break;
                case BootstrapMethod::Mmpsb:
                    run.curves[k] = tau_mmpsb_replicate(marks, idx, bands, rule);
                    break;
                case BootstrapMethod::Mpsb: {
                    auto rep = tau_mpsb_replicate(marks, idx, bands, rule);
                    for (std::size_t b = 0; b < bands.size(); ++b) {
                        run.infinite_terms[k] += rep.infinite_terms[b];
                        run.undefined_terms[k] += rep.undefined_terms[b];
                    }
                    run.curves[k] = std::move(rep.curve);
                    break;
                }
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateBackgroundOdds) throw;
            run.failed[k] = 1;
            run.curves[k] = TauCurve{bands, std::vector<double>(bands.size(), std::numeric_limits<double>::quiet_NaN()),
                                     rule, CurveSource::BootstrapReplicate};
        }
    });
    return run;
}

CentralEnvelope central_envelope(const BootstrapRun& run, double level) {
    if (!(level > 0.0 && level <= 1.0)) throw Error(ErrorCode::InvalidArgument, "coverage level must lie in (0, 1]");
    const std::size_t nb = run.point_estimate.size();
    CentralEnvelope env;
    env.level = level;
    env.lower.resize(nb);
    env.upper.resize(nb);
    env.used.resize(nb);
    std::vector<double> column;
    column.reserve(run.curves.size());
    const double tail = (1.0 - level) / 2.0;
    for (std::size_t k = 0; k < nb; ++k) {
        column.clear();
        for (std::size_t r = 0; r < run.curves.size(); ++r) {
            if (!run.failed[r] && run.curves[r].defined(k)) column.push_back(run.curves[r].values[k]);
        }
        if (column.size() < 2) {
            throw Error(ErrorCode::TooFewReplicates,
                        "band " + std::to_string(k) + " has " + std::to_string(column.size()) + " defined replicate values");
        }
        std::sort(column.begin(), column.end());
        env.lower[k] = stats::quantile_sorted(column, tail);
        env.upper[k] = stats::quantile_sorted(column, 1.0 - tail);
        env.used[k] = column.size();
    }
    return env;
}

}  // namespace taustat
