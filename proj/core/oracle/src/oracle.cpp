#include "taustat/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taustat/error.hpp"

namespace taustat::oracle {

namespace {

double dist(const CaseRecord& a, const CaseRecord& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

bool related(const RelatednessRule& rule, const CaseRecord& i, const CaseRecord& j) {
    const double dt = rule.directional ? j.onset - i.onset : std::fabs(j.onset - i.onset);
    return rule.t_lower <= dt && dt <= rule.t_upper;
}

bool in_band(const DistanceBand& b, double d) { return b.d_low <= d && d < b.d_high; }

TauCurve ratio_curve(const std::vector<double>& rel, const std::vector<double>& unrel, double rel_all,
                     double unrel_all, const DistanceBandSet& bands, const RelatednessRule& rule, CurveSource src) {
    if (rel_all == 0.0 || unrel_all == 0.0) throw Error(ErrorCode::DegenerateBackgroundOdds, "oracle: degenerate");
    const double theta_all = rel_all / unrel_all;
    TauCurve c{bands, {}, rule, src};
    for (std::size_t k = 0; k < bands.size(); ++k) {
        c.values.push_back(unrel[k] == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                           : (rel[k] / unrel[k]) / theta_all);
    }
    return c;
}

}  // namespace

BandCounts band_counts(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands) {
    BandCounts out;
    out.related.assign(bands.size(), 0);
    out.unrelated.assign(bands.size(), 0);
    for (std::size_t k = 0; k < bands.size(); ++k) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            for (std::size_t j = 0; j < cases.size(); ++j) {
                if (i == j || !in_band(bands[k], dist(cases[i], cases[j]))) continue;
                if (related(rule, cases[i], cases[j])) ++out.related[k];
                else ++out.unrelated[k];
            }
        }
    }
    for (std::size_t i = 0; i < cases.size(); ++i) {
        for (std::size_t j = 0; j < cases.size(); ++j) {
            if (i == j) continue;
            if (related(rule, cases[i], cases[j])) ++out.total_related;
            else ++out.total_unrelated;
        }
    }
    return out;
}

MarkCounts mark_counts(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands) {
    const std::size_t n = cases.size(), nb = bands.size();
    MarkCounts mc;
    mc.cases = n;
    mc.bands = nb;
    mc.related.assign(n * nb, 0);
    mc.unrelated.assign(n * nb, 0);
    mc.total_related.assign(n, 0);
    mc.total_unrelated.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool z = related(rule, cases[i], cases[j]);
            const double d = dist(cases[i], cases[j]);
            (z ? mc.total_related : mc.total_unrelated)[i] += 1;
            for (std::size_t k = 0; k < nb; ++k) {
                if (in_band(bands[k], d)) (z ? mc.related : mc.unrelated)[i * nb + k] += 1;
            }
        }
    }
    return mc;
}

TauCurve tau(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands) {
    const auto bc = band_counts(cases, rule, bands);
    std::vector<double> rel(bc.related.begin(), bc.related.end());
    std::vector<double> unrel(bc.unrelated.begin(), bc.unrelated.end());
    return ratio_curve(rel, unrel, double(bc.total_related), double(bc.total_unrelated), bands, rule,
                       CurveSource::PointEstimate);
}

TauCurve tau_risb(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                  std::span<const std::size_t> indices) {
    std::vector<CaseRecord> resampled;
    for (std::size_t i : indices) resampled.push_back(cases[i]);
    const std::size_t m = resampled.size();
    std::vector<double> rel(bands.size(), 0.0), unrel(bands.size(), 0.0);
    double rel_all = 0.0, unrel_all = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            if (p == q || indices[p] == indices[q]) continue;
            const bool z = related(rule, resampled[p], resampled[q]);
            const double d = dist(resampled[p], resampled[q]);
            (z ? rel_all : unrel_all) += 1.0;
            for (std::size_t k = 0; k < bands.size(); ++k) {
                if (in_band(bands[k], d)) (z ? rel : unrel)[k] += 1.0;
            }
        }
    }
    return ratio_curve(rel, unrel, rel_all, unrel_all, bands, rule, CurveSource::BootstrapReplicate);
}

TauCurve tau_mmpsb(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                   std::span<const std::size_t> indices) {
    std::vector<double> rel(bands.size(), 0.0), unrel(bands.size(), 0.0);
    double rel_all = 0.0, unrel_all = 0.0;
    for (std::size_t i : indices) {
        for (std::size_t j = 0; j < cases.size(); ++j) {
            if (j == i) continue;
            const bool z = related(rule, cases[i], cases[j]);
            const double d = dist(cases[i], cases[j]);
            (z ? rel_all : unrel_all) += 1.0;
            for (std::size_t k = 0; k < bands.size(); ++k) {
                if (in_band(bands[k], d)) (z ? rel : unrel)[k] += 1.0;
            }
        }
    }
    // The 1/n averages cancel in each odds.
    return ratio_curve(rel, unrel, rel_all, unrel_all, bands, rule, CurveSource::BootstrapReplicate);
}

TauCurve tau_mpsb(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                  std::span<const std::size_t> indices) {
    TauCurve c{bands, std::vector<double>(bands.size(), 0.0), rule, CurveSource::BootstrapReplicate};
    for (std::size_t i : indices) {
        double rel_all = 0.0, unrel_all = 0.0;
        std::vector<double> rel(bands.size(), 0.0), unrel(bands.size(), 0.0);
        for (std::size_t j = 0; j < cases.size(); ++j) {
            if (j == i) continue;
            const bool z = related(rule, cases[i], cases[j]);
            const double d = dist(cases[i], cases[j]);
            (z ? rel_all : unrel_all) += 1.0;
            for (std::size_t k = 0; k < bands.size(); ++k) {
                if (in_band(bands[k], d)) (z ? rel : unrel)[k] += 1.0;
            }
        }
        for (std::size_t k = 0; k < bands.size(); ++k) {
            c.values[k] += (rel[k] / unrel[k]) / (rel_all / unrel_all);
        }
    }
    for (auto& v : c.values) v /= double(indices.size());
    return c;
}

std::vector<std::size_t> envelope_ranks(std::span<const std::vector<double>> rows) {
    std::vector<std::size_t> out(rows.size(), std::numeric_limits<std::size_t>::max());
    if (rows.empty()) return out;
    const std::size_t cols = rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
            std::size_t smaller = 0, larger = 0;
            for (std::size_t j = 0; j < rows.size(); ++j) {
                if (rows[j][k] < rows[i][k]) ++smaller;
                if (rows[j][k] > rows[i][k]) ++larger;
            }
            out[i] = std::min(out[i], 1 + std::min(smaller, larger));
        }
    }
    return out;
}

double quantile(std::vector<double> sample, double p) {
    std::sort(sample.begin(), sample.end());
    const double pos = p * double(sample.size() - 1);
    const double below = std::floor(pos);
    const double above = std::ceil(pos);
    const double lo = sample[static_cast<std::size_t>(below)];
    const double hi = sample[static_cast<std::size_t>(above)];
    return lo + (pos - below) * (hi - lo);
}

}  // namespace taustat::oracle
