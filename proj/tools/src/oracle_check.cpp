#include "taustat_cli/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "taustat/bootstrap.hpp"
#include "taustat/error.hpp"
#include "taustat/null_test.hpp"
#include "taustat/oracle/oracle.hpp"
#include "taustat/pair_table.hpp"
#include "taustat/tau.hpp"

namespace taustat::cli {

bool same_value(double a, double b, double tol) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace {

struct Checker {
    OracleCheckReport& report;
    double tol;
    std::string context;

    void expect(bool ok, const std::string& what) {
        ++report.comparisons;
        if (!ok) report.failures.push_back(context + ": " + what);
    }

    void curves(const std::vector<double>& fast, const std::vector<double>& slow, const std::string& what) {
        bool ok = fast.size() == slow.size();
        for (std::size_t k = 0; ok && k < fast.size(); ++k) ok = same_value(fast[k], slow[k], tol);
        expect(ok, what + " differs from oracle");
    }

    // Both sides must either throw DegenerateBackgroundOdds or agree on the curve.
    template <typename Fast, typename Slow>
    void guarded_curves(Fast fast, Slow slow, const std::string& what) {
        std::optional<TauCurve> a, b;
        try { a = fast(); } catch (const Error& e) { if (e.code() != ErrorCode::DegenerateBackgroundOdds) throw; }
        try { b = slow(); } catch (const Error& e) { if (e.code() != ErrorCode::DegenerateBackgroundOdds) throw; }
        if (a.has_value() != b.has_value()) {
            expect(false, what + ": degenerate-odds disagreement");
        } else if (a) {
            curves(a->values, b->values, what);
        }
    }
};

CaseSet random_cases(RngStream& s, std::size_t n) {
    std::vector<CaseRecord> raw;
    const double extent = double(10 + s.uniform_index(120));
    for (std::size_t i = 0; i < n; ++i) {
        raw.push_back({"c" + std::to_string(i), double(s.uniform_index(std::uint64_t(extent) + 1)),
                       double(s.uniform_index(std::uint64_t(extent) + 1)), double(s.uniform_index(40))});
    }
    return validate_case_set(std::move(raw));
}

DistanceBandSet random_bands(RngStream& s) {
    switch (s.uniform_index(4)) {
        case 0: return DistanceBandSet::overlapping();
        case 1: return DistanceBandSet::non_overlapping();
        default: break;
    }
    std::vector<DistanceBand> bands;
    double lo = double(s.uniform_index(3));
    const std::size_t count = 1 + s.uniform_index(12);
    for (std::size_t k = 0; k < count; ++k) {
        const double hi = lo + double(1 + s.uniform_index(15));
        bands.push_back({lo, hi});
        lo = hi;
    }
    if (s.uniform_index(3) == 0) bands.push_back({lo, std::numeric_limits<double>::infinity()});
    return DistanceBandSet(std::move(bands));
}

}  // namespace

void oracle_check_case_set(const CaseSet& cases, const RelatednessRule& rule, const DistanceBandSet& bands,
                           std::uint64_t seed, double tolerance, OracleCheckReport& report) {
    Checker check{report, tolerance, {}};
    {
        std::ostringstream ctx;
        ctx << "n=" << cases.size() << " rule=" << (rule.directional ? "dir" : "sym") << "[" << rule.t_lower << ","
            << rule.t_upper << "] bands=" << bands.to_string().substr(0, 40) << " seed=" << seed;
        check.context = ctx.str();
    }
    const auto table = build_pair_table(cases, rule);
    const BandIndex index(table, bands);
    const auto onsets = cases.onsets();

    const auto slow_counts = oracle::band_counts(cases, rule, bands);
    check.expect(band_counts(table, bands) == slow_counts, "band counts (direct) differ");
    check.expect(band_counts(table, index) == slow_counts, "band counts (indexed) differ");
    check.expect(band_counts(index, rule, onsets) == slow_counts, "band counts (onset path) differ");
    check.expect(mark_counts(table, index) == oracle::mark_counts(cases, rule, bands), "mark counts differ");
    check.guarded_curves([&] { return tau_odds(band_counts(table, index), bands, rule); },
                         [&] { return oracle::tau(cases, rule, bands); }, "tau");

    RngPolicy rng{seed};
    const auto marks = mark_counts(table, index);
    for (std::uint64_t r = 0; r < 3; ++r) {
        auto s = rng.stream(StreamPurpose::Synthetic, r);
        const auto idx = resample_indices(cases.size(), s);
        check.guarded_curves([&] { return tau_risb_replicate(table, index, idx); },
                             [&] { return oracle::tau_risb(cases, rule, bands, idx); }, "risb replicate");
        check.guarded_curves([&] { return tau_risb_replicate(cases, rule, bands, idx); },
                             [&] { return oracle::tau_risb(cases, rule, bands, idx); }, "risb replicate (case set)");
        check.guarded_curves([&] { return tau_mmpsb_replicate(marks, idx, bands, rule); },
                             [&] { return oracle::tau_mmpsb(cases, rule, bands, idx); }, "mmpsb replicate");
        check.curves(tau_mpsb_replicate(marks, idx, bands, rule).curve.values,
                     oracle::tau_mpsb(cases, rule, bands, idx).values, "mpsb replicate");
    }

    // Extreme ranks on coarse random values so that ties are common.
    auto s = rng.stream(StreamPurpose::Synthetic, 1000);
    std::vector<std::vector<double>> rows(2 + s.uniform_index(30), std::vector<double>(bands.size()));
    for (auto& row : rows) {
        for (auto& v : row) v = double(s.uniform_index(6)) / 2.0;
    }
    check.expect(extreme_ranks(rows) == oracle::envelope_ranks(rows), "extreme ranks differ");
}

OracleCheckReport run_oracle_check(const OracleCheckOptions& opt) {
    OracleCheckReport report;
    const RngPolicy rng{opt.seed};
    for (std::size_t i = 0; i < opt.instances; ++i) {
        auto s = rng.stream(StreamPurpose::Synthetic, 1'000'000 + i);
        const std::size_t n = 2 + s.uniform_index(std::max<std::size_t>(opt.max_n, 2) - 1);
        const CaseSet cases = random_cases(s, n);
        const double lo = double(s.uniform_index(4));
        const auto rule = RelatednessRule::make(lo, lo + double(s.uniform_index(12)), s.uniform_index(2) == 0);
        const DistanceBandSet bands = random_bands(s);
        oracle_check_case_set(cases, rule, bands, opt.seed + i, opt.tolerance, report);
        ++report.instances;
    }
    return report;
}

}  // namespace taustat::cli
