#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace taustat;
using namespace taustat::testing;

namespace {

// 100 right-skewed values with ties; mirrored in tests/scripts/reference_values.py.
std::vector<double> asymmetric_sample() {
    std::vector<double> x;
    for (int i = 1; i <= 100; ++i) x.push_back(10.0 + 50.0 * std::pow(i / 100.0, 3) + (i % 7));
    return x;
}

BootstrapRun run_of(const TauCurve& point, std::vector<TauCurve> curves) {
    BootstrapRun run;
    run.point_estimate = point;
    run.curves = std::move(curves);
    run.failed.assign(run.curves.size(), 0);
    return run;
}

}  // namespace

TEST(Crossing, SymmetricSegment) {
    const auto c = first_downward_crossing(curve_at({30, 40}, {1.2, 0.8}));
    EXPECT_EQ(c.outcome, CrossingOutcome::Crossed);
    EXPECT_DOUBLE_EQ(c.distance, 35.0);
}

TEST(Crossing, FourCaseCurve) {
    const auto curve = tau_point_estimate(four_cases(), within_two_days(), two_bands());
    const auto d = estimate_endpoint(curve);
    ASSERT_TRUE(d.has_value());
    EXPECT_NEAR(*d, 21.5, 1e-12);
}

TEST(Crossing, Categories) {
    EXPECT_EQ(first_downward_crossing(curve_at({1, 2, 3}, {2, 2, 2})).outcome, CrossingOutcome::NeverCrossed);
    EXPECT_EQ(first_downward_crossing(curve_at({1, 2, 3}, {0.5, 2, 0.5})).outcome, CrossingOutcome::StartedAtOrBelow);
    EXPECT_EQ(first_downward_crossing(curve_at({1, 2, 3}, {1.0, 2, 0.5})).outcome, CrossingOutcome::StartedAtOrBelow);
    EXPECT_EQ(first_downward_crossing(curve_at({1}, {2})).outcome, CrossingOutcome::NeverCrossed);
    EXPECT_FALSE(estimate_endpoint(curve_at({1, 2}, {0.5, 0.4})).has_value());
}

TEST(Crossing, TouchingOneCountsAtThatMidpoint) {
    const auto c = first_downward_crossing(curve_at({10, 20, 30}, {3.0, 1.0, 2.0}));
    EXPECT_EQ(c.outcome, CrossingOutcome::Crossed);
    EXPECT_EQ(c.distance, 20.0);
}

TEST(Crossing, UndefinedBandsAreSkipped) {
    const auto c = first_downward_crossing(curve_at({10, 20, 30}, {kNaN, 2.0, kNaN}));
    EXPECT_EQ(c.outcome, CrossingOutcome::NeverCrossed);
    const auto d = first_downward_crossing(curve_at({10, 20, 30, 40}, {kNaN, 2.0, kNaN, 0.0}));
    EXPECT_EQ(d.outcome, CrossingOutcome::Crossed);
    EXPECT_DOUBLE_EQ(d.distance, 30.0);
}

TEST(ExtractCrossings, CountsEachOutcome) {
    const std::vector<double> mids{10, 20, 30};
    auto run = run_of(curve_at(mids, {2, 1.5, 0.5}),
                      {curve_at(mids, {2, 0, 0}), curve_at(mids, {2, 2, 2}), curve_at(mids, {0.5, 2, 0}),
                       curve_at(mids, {kNaN, kNaN, kNaN}), curve_at(mids, {3, 1, 0})});
    run.failed[3] = 1;
    const auto s = extract_crossings(run);
    EXPECT_EQ(s.total, 5u);
    EXPECT_EQ(s.distances, (std::vector<double>{15, 20}));
    EXPECT_EQ(s.replicate, (std::vector<std::size_t>{0, 4}));
    EXPECT_EQ(s.never_crossed, 1u);
    EXPECT_EQ(s.started_at_or_below, 1u);
    EXPECT_EQ(s.failed, 1u);
    EXPECT_DOUBLE_EQ(s.proportion_used(), 0.4);

    const auto none = run_of(curve_at(mids, {2, 2, 2}), {curve_at(mids, {2, 2, 2})});
    EXPECT_EQ(error_code_of([&] { (void)extract_crossings(none); }), ErrorCode::NoCrossings);
}

TEST(PercentileCi, OneToHundred) {
    std::vector<double> x;
    for (int i = 1; i <= 100; ++i) x.push_back(i);
    const auto ci = percentile_ci(x, 0.95);
    // (n-1)p + 1 = 3.475 and 97.525; numpy.quantile agrees.
    EXPECT_NEAR(ci.low, 3.475, 1e-12);
    EXPECT_NEAR(ci.high, 97.52499999999999, 1e-12);
}

TEST(PercentileCi, ConstantSampleHasZeroWidth) {
    const std::vector<double> x(30, 7.25);
    const auto ci = percentile_ci(x, 0.9);
    EXPECT_EQ(ci.low, 7.25);
    EXPECT_EQ(ci.high, 7.25);
    EXPECT_EQ(error_code_of([] { (void)percentile_ci(std::vector<double>{1.0}, 0.95); }), ErrorCode::TooFewValues);
}

TEST(BcaCi, SymmetricZeroSkewEqualsPercentile) {
    std::vector<double> x;
    for (int k = 1; k <= 50; ++k) {
        x.push_back(40.0 - k * 0.5);
        x.push_back(40.0 + k * 0.5);
    }
    const auto bca = bca_ci(x, 40.0, 0.95);
    EXPECT_EQ(bca.z0, 0.0);
    EXPECT_EQ(bca.acceleration, 0.0);
    const auto pct = percentile_ci(x, 0.95);
    EXPECT_EQ(bca.ci.low, pct.low);
    EXPECT_EQ(bca.ci.high, pct.high);
}

TEST(BcaCi, MatchesIndependentImplementation) {
    // Frozen from tests/scripts/reference_values.py (numpy/scipy).
    const auto x = asymmetric_sample();
    const auto a = bca_ci(x, 18.3, 0.95);
    EXPECT_NEAR(a.z0, -0.10043372051146975, 1e-9);
    EXPECT_NEAR(a.acceleration, 0.01680034381873112, 1e-9);
    EXPECT_NEAR(a.level_low, 0.018223902110984305, 1e-9);
    EXPECT_NEAR(a.level_high, 0.9655490948899297, 1e-9);
    EXPECT_NEAR(a.ci.low, 10.399237591783558, 1e-9);
    EXPECT_NEAR(a.ci.high, 58.34275545004113, 1e-9);
    const auto b = bca_ci(x, 25.5, 0.90);
    EXPECT_NEAR(b.z0, 0.3054807880993974, 1e-9);
    EXPECT_NEAR(b.level_low, 0.15758886969130492, 1e-9);
    EXPECT_NEAR(b.level_high, 0.9898804436021968, 1e-9);
    EXPECT_NEAR(b.ci.low, 13.167643973155277, 1e-9);
    EXPECT_NEAR(b.ci.high, 61.629759890137464, 1e-9);
}

TEST(BcaCi, OneSidedSampleFallsBackToPercentile) {
    const auto x = asymmetric_sample();
    const auto r = bca_ci(x, 1.0, 0.95);
    EXPECT_TRUE(r.fell_back_to_percentile);
    const auto pct = percentile_ci(x, 0.95);
    EXPECT_EQ(r.ci.low, pct.low);
    EXPECT_EQ(r.ci.high, pct.high);
}

TEST(BcaCi, NeedsTwentyValues) {
    const std::vector<double> x(19, 1.0);
    EXPECT_EQ(error_code_of([&] { (void)bca_ci(x, 1.0, 0.95); }), ErrorCode::TooFewValues);
}

TEST(Stats, BimodalityCoefficientMatchesReference) {
    EXPECT_NEAR(stats::bimodality_coefficient(asymmetric_sample()), 0.6852054962922809, 1e-12);
    std::vector<double> clumps;
    for (int i = 0; i < 50; ++i) clumps.push_back(15.0 + 3.0 * i / 49.0);
    for (int i = 0; i < 50; ++i) clumps.push_back(24.0 + 3.0 * i / 49.0);
    EXPECT_NEAR(stats::bimodality_coefficient(clumps), 0.8309824654396114, 1e-12);
}

TEST(Stats, NormalQuantileRoundTrip) {
    for (double p : {0.001, 0.025, 0.3, 0.5, 0.9, 0.975}) {
        EXPECT_NEAR(stats::normal_cdf(stats::normal_quantile(p)), p, 1e-14);
    }
    EXPECT_EQ(stats::normal_quantile(0.5), 0.0);
}

TEST(EstimateRange, WarnsWhenNotAllReplicatesCross) {
    const std::vector<double> mids{10, 20, 30};
    std::vector<TauCurve> reps;
    for (int r = 0; r < 40; ++r) reps.push_back(curve_at(mids, {2.0, 1.0 + 0.02 * (r - 20), 0.5}));
    reps.push_back(curve_at(mids, {0.5, 0.5, 0.5}));
    const auto est = estimate_clustering_range(run_of(curve_at(mids, {2, 1, 0.5}), reps), CiMethod::Percentile, 0.95);
    ASSERT_TRUE(est.d_hat.has_value());
    EXPECT_DOUBLE_EQ(*est.d_hat, 20.0);
    EXPECT_LT(est.proportion_used(), 1.0);
    EXPECT_FALSE(est.warnings.empty());
}

TEST(EstimateRange, BimodalCrossingsAreFlagged) {
    const std::vector<double> mids{10, 20, 30, 40};
    std::vector<TauCurve> reps;
    for (int r = 0; r < 30; ++r) reps.push_back(curve_at(mids, {2.0, 0.5 + 0.001 * r, 0.5, 0.5}));
    for (int r = 0; r < 30; ++r) reps.push_back(curve_at(mids, {2.0, 2.0, 1.5 - 0.001 * r, 0.2}));
    const auto est = estimate_clustering_range(run_of(curve_at(mids, {2, 1.5, 0.5, 0.5}), reps), CiMethod::Bca, 0.95);
    EXPECT_TRUE(est.bimodal);
    EXPECT_GT(est.bimodality, stats::kBimodalityThreshold);
    bool warned = false;
    for (const auto& w : est.warnings) warned |= w.find("bimodal") != std::string::npos;
    EXPECT_TRUE(warned);
}

TEST(Inhibition, AlwaysAboveOneHasNone) {
    EXPECT_EQ(error_code_of([] { (void)estimate_inhibition_start(curve_at({1, 2, 3}, {1.5, 1.2, 1.0}), 2); }),
              ErrorCode::NoInhibition);
}

TEST(Inhibition, ReflectedCurveStartEqualsReflectedEndpoint) {
    // Reversing a curve in distance and reflecting it about tau = 1 turns every downward
    // crossing at d into one at (first + last midpoint) - d, so the last downward crossing of
    // the mirror is the reflection of the first downward crossing of the original.
    auto s = RngPolicy{17}.stream(StreamPurpose::Synthetic, 0);
    std::vector<double> mids;
    for (int k = 0; k < 12; ++k) mids.push_back(5.0 + 4.0 * k);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(mids.size());
        for (auto& x : v) x = s.uniform(0.3, 1.7);
        v.front() = 1.5;
        const auto original = curve_at(mids, v);
        const auto d = estimate_endpoint(original);
        if (!d) continue;
        std::vector<double> m(v.rbegin(), v.rend());
        for (auto& x : m) x = 2.0 - x;
        const auto mirrored = curve_at(mids, m);
        EXPECT_NEAR(estimate_inhibition_start(mirrored, mids.size() - 1), mids.front() + mids.back() - *d, 1e-9);
    }
}

TEST(Inhibition, BootstrapInterval) {
    const std::vector<double> mids{10, 20, 30, 40, 50};
    std::vector<TauCurve> reps;
    for (int r = 0; r < 40; ++r) reps.push_back(curve_at(mids, {2.0, 1.3, 1.0 + 0.01 * r, 0.6, 0.7}));
    EnvelopeTestResult test;
    test.exceedance = {{0, 1, Direction::Above}, {3, 4, Direction::Below}};
    const auto est = estimate_inhibition(run_of(curve_at(mids, {2.0, 1.3, 1.2, 0.6, 0.7}), reps), test,
                                         CiMethod::Percentile, 0.9);
    EXPECT_NEAR(est.start, 30.0 + 10.0 * 0.2 / 0.6, 1e-12);
    EXPECT_EQ(est.sample.size(), 40u);
    EXPECT_LE(est.ci.low, est.ci.high);
    EnvelopeTestResult none;
    EXPECT_EQ(error_code_of([&] { (void)estimate_inhibition_start(reps[0], none); }), ErrorCode::NoInhibition);
}

TEST(ArealRatio, TwentyPercentLongerRange) { EXPECT_NEAR(areal_ratio(36.0, 30.0), 1.44, 1e-12); }

TEST(CiMethod, ParseAndPrint) {
    EXPECT_EQ(parse_ci_method("bca"), CiMethod::Bca);
    EXPECT_EQ(parse_ci_method(to_string(CiMethod::Percentile)), CiMethod::Percentile);
    EXPECT_EQ(error_code_of([] { (void)parse_ci_method("normal"); }), ErrorCode::InvalidArgument);
}
