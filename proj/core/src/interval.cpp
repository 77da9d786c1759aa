#include "taustat/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "taustat/error.hpp"
#include "taustat/stats.hpp"

namespace taustat {

namespace {

struct Point {
    std::size_t band;
    double mid;
    double tau;
};

std::vector<Point> defined_points(const TauCurve& curve, std::size_t last_band) {
    std::vector<Point> pts;
    const auto mids = curve.bands.midpoints();
    for (std::size_t k = 0; k < curve.size() && k <= last_band; ++k) {
        if (curve.defined(k)) pts.push_back({k, mids[k], curve.values[k]});
    }
    return pts;
}

double crossing_between(const Point& a, const Point& b) {
    return a.mid + (a.tau - 1.0) / (a.tau - b.tau) * (b.mid - a.mid);
}

}  // namespace

Crossing first_downward_crossing(const TauCurve& curve) {
    const auto pts = defined_points(curve, curve.size());
    if (pts.size() < 2) return {CrossingOutcome::NeverCrossed, 0.0};
    if (!(pts.front().tau > 1.0)) return {CrossingOutcome::StartedAtOrBelow, 0.0};
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (pts[k].tau == 1.0) return {CrossingOutcome::Crossed, pts[k].mid};
        if (pts[k].tau < 1.0) return {CrossingOutcome::Crossed, crossing_between(pts[k - 1], pts[k])};
    }
    return {CrossingOutcome::NeverCrossed, 0.0};
}

std::optional<double> estimate_endpoint(const TauCurve& curve) {
    const auto c = first_downward_crossing(curve);
    if (c.outcome != CrossingOutcome::Crossed) return std::nullopt;
    return c.distance;
}

CrossingSample extract_crossings(const BootstrapRun& run) {
    CrossingSample s;
    s.total = run.curves.size();
    for (std::size_t r = 0; r < run.curves.size(); ++r) {
        if (!run.failed.empty() && run.failed[r]) {
            ++s.failed;
            continue;
        }
        const auto c = first_downward_crossing(run.curves[r]);
        switch (c.outcome) {
            case CrossingOutcome::Crossed:
                s.distances.push_back(c.distance);
                s.replicate.push_back(r);
                break;
            case CrossingOutcome::StartedAtOrBelow: ++s.started_at_or_below; break;
            case CrossingOutcome::NeverCrossed: ++s.never_crossed; break;
            case CrossingOutcome::Failed: ++s.failed; break;
        }
    }
    if (s.distances.empty()) {
        throw Error(ErrorCode::NoCrossings, "no bootstrap replicate starts above tau = 1 and crosses it");
    }
    return s;
}

std::string_view to_string(CiMethod m) noexcept { return m == CiMethod::Bca ? "bca" : "percentile"; }

CiMethod parse_ci_method(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    if (s == "bca") return CiMethod::Bca;
    if (s == "percentile") return CiMethod::Percentile;
    throw Error(ErrorCode::InvalidArgument, "unknown CI method '" + s + "' (bca|percentile)");
}

namespace {

void check_coverage(double coverage) {
    if (!(coverage > 0.0 && coverage < 1.0)) throw Error(ErrorCode::InvalidArgument, "coverage must lie in (0, 1)");
}

}  // namespace

Ci percentile_ci(std::span<const double> sample, double coverage) {
    check_coverage(coverage);
    if (sample.size() < 2) throw Error(ErrorCode::TooFewValues, "percentile CI needs at least 2 values");
    std::vector<double> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end());
    const double tail = (1.0 - coverage) / 2.0;
    return {stats::quantile_sorted(v, tail), stats::quantile_sorted(v, 1.0 - tail)};
}

BcaResult bca_ci(std::span<const double> sample, double point_estimate, double coverage) {
    check_coverage(coverage);
    if (sample.size() < 20) {
        throw Error(ErrorCode::TooFewValues, "BCa is unstable below 20 bootstrap values (got " +
                                                 std::to_string(sample.size()) + "); use a percentile CI or more replicates");
    }
    if (!std::isfinite(point_estimate)) throw Error(ErrorCode::InvalidArgument, "BCa needs a finite point estimate");

    std::vector<double> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end());
    const double b = double(v.size());
    const double tail = (1.0 - coverage) / 2.0;

    BcaResult res;
    const auto below = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), point_estimate) - v.begin());
    if (below == 0 || below == v.size()) {
        res.fell_back_to_percentile = true;
        res.ci = {stats::quantile_sorted(v, tail), stats::quantile_sorted(v, 1.0 - tail)};
        res.z0 = below == 0 ? -INFINITY : INFINITY;
        res.level_low = tail;
        res.level_high = 1.0 - tail;
        return res;
    }
    res.z0 = stats::normal_quantile(double(below) / b);

    // Jackknife over the bootstrap sample. With leave-one-out means loo_i = (sum - x_i)/(B-1),
    // mean(loo) - loo_i reduces to (x_i - mean)/(B-1); using that form keeps symmetric samples
    // exactly symmetric.
    const double centre = stats::mean(sample);
    double s2 = 0.0, s3 = 0.0;
    for (double x : sample) {
        const double d = (x - centre) / (b - 1.0);
        s2 += d * d;
        s3 += d * d * d;
    }
    res.acceleration = s2 > 0.0 ? s3 / (6.0 * std::pow(s2, 1.5)) : 0.0;

    auto adjusted = [&](double q) {
        const double zq = stats::normal_quantile(q);
        const double shifted = res.z0 + (res.z0 + zq) / (1.0 - res.acceleration * (res.z0 + zq));
        // No correction: keep the nominal level rather than a Phi(Phi^-1(q)) round trip.
        return shifted == zq ? q : stats::normal_cdf(shifted);
    };
    res.level_low = adjusted(tail);
    res.level_high = adjusted(1.0 - tail);
    res.ci = {stats::quantile_sorted(v, res.level_low), stats::quantile_sorted(v, res.level_high)};
    return res;
}

EndpointEstimate estimate_clustering_range(const BootstrapRun& run, CiMethod method, double coverage) {
    EndpointEstimate est;
    est.ci_method = method;
    est.coverage = coverage;
    est.d_hat = estimate_endpoint(run.point_estimate);
    est.crossings = extract_crossings(run);
    const auto& sample = est.crossings.distances;

    if (est.crossings.proportion_used() < 1.0) {
        std::ostringstream os;
        os << "only " << est.crossings.distances.size() << " of " << est.crossings.total
           << " bootstrap replicates cross tau = 1 from above; the CI is conditional on crossing and may be invalid";
        est.warnings.push_back(os.str());
    }
    if (method == CiMethod::Bca && !est.d_hat) {
        est.warnings.push_back("point estimate never crosses tau = 1; BCa needs D-hat, percentile CI reported instead");
        est.ci_method = CiMethod::Percentile;
    }
    if (est.ci_method == CiMethod::Bca) {
        est.bca = bca_ci(sample, *est.d_hat, coverage);
        est.ci = est.bca->ci;
        if (est.bca->fell_back_to_percentile) {
            est.warnings.push_back("all crossing distances lie on one side of D-hat (z0 infinite); percentile CI reported");
        }
    } else {
        est.ci = percentile_ci(sample, coverage);
    }
    est.sample_mean = stats::mean(sample);
    est.sample_median = stats::median(sample);
    if (sample.size() >= 4) {
        est.bimodality = stats::bimodality_coefficient(sample);
        est.bimodal = est.bimodality > stats::kBimodalityThreshold;
        if (est.bimodal) {
            std::ostringstream os;
            os << "crossing distances look bimodal (bimodality coefficient " << est.bimodality
               << " > 5/9); a single interval summarises them poorly";
            est.warnings.push_back(os.str());
        }
    }
    return est;
}

namespace {

std::optional<double> last_exit_below(const TauCurve& curve, std::size_t last_band) {
    const auto pts = defined_points(curve, last_band);
    for (std::size_t k = pts.size(); k-- > 1;) {
        if (pts[k - 1].tau >= 1.0 && pts[k].tau < 1.0) {
            return pts[k - 1].tau == 1.0 ? pts[k - 1].mid : crossing_between(pts[k - 1], pts[k]);
        }
    }
    return std::nullopt;
}

const ExceedanceRegion& first_below_region(const EnvelopeTestResult& test) {
    for (const auto& r : test.exceedance) {
        if (r.direction == Direction::Below) return r;
    }
    throw Error(ErrorCode::NoInhibition, "the envelope test found no region below the null envelope");
}

}  // namespace

double estimate_inhibition_start(const TauCurve& curve, std::size_t region_last_band) {
    const auto d = last_exit_below(curve, region_last_band);
    if (!d) throw Error(ErrorCode::NoInhibition, "curve never passes from tau >= 1 into tau < 1 before the region ends");
    return *d;
}

double estimate_inhibition_start(const TauCurve& curve, const EnvelopeTestResult& test) {
    return estimate_inhibition_start(curve, first_below_region(test).last_band);
}

InhibitionEstimate estimate_inhibition(const BootstrapRun& run, const EnvelopeTestResult& test, CiMethod method,
                                       double coverage) {
    const auto& region = first_below_region(test);
    InhibitionEstimate est;
    est.start = estimate_inhibition_start(run.point_estimate, region.last_band);
    est.total = run.curves.size();
    est.ci_method = method;
    for (std::size_t r = 0; r < run.curves.size(); ++r) {
        if (!run.failed.empty() && run.failed[r]) continue;
        if (auto d = last_exit_below(run.curves[r], region.last_band)) est.sample.push_back(*d);
    }
    if (est.sample.empty()) throw Error(ErrorCode::NoCrossings, "no bootstrap replicate exits into tau < 1");
    if (est.proportion_used() < 1.0) {
        std::ostringstream os;
        os << "only " << est.sample.size() << " of " << est.total
           << " bootstrap replicates exit into tau < 1; the CI is conditional and may be invalid";
        est.warnings.push_back(os.str());
    }
    if (method == CiMethod::Bca) {
        const auto b = bca_ci(est.sample, est.start, coverage);
        est.ci = b.ci;
        if (b.fell_back_to_percentile) est.warnings.push_back("BCa bias correction degenerate; percentile CI reported");
    } else {
        est.ci = percentile_ci(est.sample, coverage);
    }
    return est;
}

}  // namespace taustat
