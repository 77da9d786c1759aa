#include "taustat/tau.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "taustat/error.hpp"

namespace taustat {

double OddsValue::value() const noexcept {
    if (denominator == 0) return std::numeric_limits<double>::quiet_NaN();
    return double(numerator) / double(denominator);
}

TauCurve tau_odds(const BandCounts& counts, const DistanceBandSet& bands, const RelatednessRule& rule,
                  CurveSource source) {
    if (counts.related.size() != bands.size() || counts.unrelated.size() != bands.size()) {
        throw Error(ErrorCode::MismatchedBandSets, "band counts do not match the band set");
    }
    if (counts.total_related == 0 || counts.total_unrelated == 0) {
        throw Error(ErrorCode::DegenerateBackgroundOdds,
                    "background odds theta(0,inf) is " +
                        std::string(counts.total_related == 0 ? "zero (no related pairs)"
                                                              : "undefined (no unrelated pairs)"));
    }
    TauCurve curve{bands, {}, rule, source};
    curve.values.resize(bands.size());
    // tau = (R_b / U_b) / (R / U), formed from integer counts in one final division.
    const double bg_unrel = double(counts.total_unrelated);
    const double bg_rel = double(counts.total_related);
    for (std::size_t k = 0; k < bands.size(); ++k) {
        if (counts.unrelated[k] == 0) {
            curve.values[k] = std::numeric_limits<double>::quiet_NaN();
        } else {
            curve.values[k] = (double(counts.related[k]) * bg_unrel) / (double(counts.unrelated[k]) * bg_rel);
        }
    }
    return curve;
}

TauCurve tau_point_estimate(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands) {
    const auto table = PairTable::build(cases, rule);
    return tau_odds(band_counts(table, bands), bands, rule);
}

Interpolated interpolate_tau(const TauCurve& curve, double d, UndefinedPolicy policy) {
    const auto mids = curve.bands.midpoints();
    const std::size_t m = mids.size();
    if (m == 0 || curve.values.size() != m) throw Error(ErrorCode::InvalidArgument, "empty or malformed curve");
    if (!(d >= mids.front() && d <= mids.back())) {
        throw Error(ErrorCode::OutOfRange, "distance " + std::to_string(d) + " lies outside the band midpoints");
    }
    // left: last midpoint <= d; right: first midpoint > d.
    std::size_t right = 0;
    while (right < m && mids[right] <= d) ++right;
    std::ptrdiff_t left = static_cast<std::ptrdiff_t>(right) - 1;
    if (mids[left] == d && curve.defined(left)) return {curve.values[left], false};

    bool skipped = false;
    while (left >= 0 && !curve.defined(left)) {
        skipped = true;
        --left;
    }
    while (right < m && !curve.defined(right)) {
        skipped = true;
        ++right;
    }
    if (skipped && policy == UndefinedPolicy::Strict) {
        throw Error(ErrorCode::UndefinedNeighbor, "a flanking band value is undefined");
    }
    if (left < 0 || right >= m) {
        throw Error(ErrorCode::UndefinedNeighbor, "no defined tau value on one side of d");
    }
    const double x0 = mids[left], x1 = mids[right];
    const double y0 = curve.values[left], y1 = curve.values[right];
    return {y0 + (y1 - y0) * (d - x0) / (x1 - x0), skipped};
}

std::vector<std::uint32_t> multiplicities(std::size_t n, std::span<const std::size_t> indices) {
    std::vector<std::uint32_t> c(n, 0);
    for (std::size_t i : indices) {
        if (i >= n) throw Error(ErrorCode::InvalidArgument, "resampled index out of range");
        ++c[i];
    }
    return c;
}

namespace {

void check_marks(const MarkCounts& marks, const DistanceBandSet& bands, std::span<const std::size_t> indices) {
    if (marks.bands != bands.size()) throw Error(ErrorCode::MismatchedBandSets, "mark counts do not match band set");
    if (indices.empty()) throw Error(ErrorCode::InvalidArgument, "resample is empty");
}

}  // namespace

TauCurve tau_mmpsb_replicate(const MarkCounts& marks, std::span<const std::size_t> indices,
                             const DistanceBandSet& bands, const RelatednessRule& rule) {
    check_marks(marks, bands, indices);
    const auto c = multiplicities(marks.cases, indices);
    const std::size_t nb = marks.bands;
    BandCounts sums;
    sums.related.assign(nb, 0);
    sums.unrelated.assign(nb, 0);
    for (std::size_t i = 0; i < marks.cases; ++i) {
        if (c[i] == 0) continue;
        const std::uint64_t w = c[i];
        for (std::size_t k = 0; k < nb; ++k) {
            sums.related[k] += w * marks.related_at(i, k);
            sums.unrelated[k] += w * marks.unrelated_at(i, k);
        }
        sums.total_related += w * marks.total_related[i];
        sums.total_unrelated += w * marks.total_unrelated[i];
    }
    return tau_odds(sums, bands, rule, CurveSource::BootstrapReplicate);
}

bool MpsbReplicate::fully_defined() const noexcept { return curve.defined_count() == curve.size(); }

MpsbReplicate tau_mpsb_replicate(const MarkCounts& marks, std::span<const std::size_t> indices,
                                 const DistanceBandSet& bands, const RelatednessRule& rule) {
    check_marks(marks, bands, indices);
    const auto c = multiplicities(marks.cases, indices);
    const std::size_t nb = marks.bands;
    MpsbReplicate out;
    out.curve = TauCurve{bands, std::vector<double>(nb, 0.0), rule, CurveSource::BootstrapReplicate};
    out.infinite_terms.assign(nb, 0);
    out.undefined_terms.assign(nb, 0);
    for (std::size_t i = 0; i < marks.cases; ++i) {
        if (c[i] == 0) continue;
        const double background = double(marks.total_related[i]) / double(marks.total_unrelated[i]);
        for (std::size_t k = 0; k < nb; ++k) {
            const double local = double(marks.related_at(i, k)) / double(marks.unrelated_at(i, k));
            const double term = local / background;
            if (std::isnan(term)) {
                out.undefined_terms[k] += c[i];
            } else if (std::isinf(term)) {
                out.infinite_terms[k] += c[i];
            }
            out.curve.values[k] += double(c[i]) * term;
        }
    }
    const double n = double(indices.size());
    for (auto& v : out.curve.values) v /= n;
    return out;
}

}  // namespace taustat
