#include "taustat/pair_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taustat/error.hpp"

namespace taustat {

PairTable PairTable::build(const CaseSet& cases, const RelatednessRule& rule) {
    PairTable t;
    t.n_ = cases.size();
    t.rule_ = rule;
    t.onsets_ = cases.onsets();
    auto dist = std::make_shared<std::vector<double>>(t.n_ * t.n_, 0.0);
    for (std::size_t i = 0; i < t.n_; ++i) {
        for (std::size_t j = i + 1; j < t.n_; ++j) {
            const double dx = cases[i].x - cases[j].x;
            const double dy = cases[i].y - cases[j].y;
            const double d = std::sqrt(dx * dx + dy * dy);
            (*dist)[i * t.n_ + j] = d;
            (*dist)[j * t.n_ + i] = d;
        }
    }
    t.dist_ = std::move(dist);
    t.compute_marks();
    return t;
}

PairTable PairTable::with_onsets(std::span<const double> onsets) const {
    if (onsets.size() != n_) throw Error(ErrorCode::InvalidArgument, "onset vector length does not match case count");
    PairTable t;
    t.n_ = n_;
    t.dist_ = dist_;
    t.rule_ = rule_;
    t.onsets_.assign(onsets.begin(), onsets.end());
    t.compute_marks();
    return t;
}

void PairTable::compute_marks() {
    marks_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (i != j) marks_[i * n_ + j] = rule_.related(onsets_[i], onsets_[j]) ? 1 : 0;
        }
    }
}

BandIndex::BandIndex(const PairTable& table, const DistanceBandSet& bands) : n_(table.size()), bands_(bands) {
    std::vector<double> edges;
    edges.reserve(2 * bands.size());
    for (const auto& b : bands.bands()) {
        edges.push_back(b.d_low);
        if (std::isfinite(b.d_high)) edges.push_back(b.d_high);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.size() + 1 > std::numeric_limits<std::uint16_t>::max()) {
        throw Error(ErrorCode::InvalidArgument, "too many distinct band edges");
    }
    slots_ = edges.size() + 1;

    auto position = [&](double edge) {
        return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), edge) - edges.begin());
    };
    first_slot_.reserve(bands.size());
    end_slot_.reserve(bands.size());
    for (const auto& b : bands.bands()) {
        first_slot_.push_back(position(b.d_low) + 1);
        end_slot_.push_back(std::isfinite(b.d_high) ? position(b.d_high) + 1 : slots_);
    }

    slot_.assign(n_ * n_, 0);
    const auto dist = table.distances();
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            const double d = dist[i * n_ + j];
            slot_[i * n_ + j] =
                static_cast<std::uint16_t>(std::upper_bound(edges.begin(), edges.end(), d) - edges.begin());
        }
    }
}

namespace {

void check_index(const PairTable& table, const BandIndex& index) {
    if (table.size() != index.case_count()) {
        throw Error(ErrorCode::InvalidArgument, "band index was built for a different case set");
    }
}

// hist holds 2 * slots counters, interleaved (unrelated, related).
template <typename Count>
BandCounts counts_from_histogram(const BandIndex& index, const std::vector<Count>& hist) {
    const std::size_t slots = index.slot_count();
    std::vector<std::uint64_t> cum_rel(slots + 1, 0), cum_unrel(slots + 1, 0);
    for (std::size_t s = 0; s < slots; ++s) {
        cum_unrel[s + 1] = cum_unrel[s] + hist[2 * s];
        cum_rel[s + 1] = cum_rel[s] + hist[2 * s + 1];
    }
    BandCounts out;
    const std::size_t nb = index.band_count();
    out.related.resize(nb);
    out.unrelated.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        out.related[k] = cum_rel[index.end_slot(k)] - cum_rel[index.first_slot(k)];
        out.unrelated[k] = cum_unrel[index.end_slot(k)] - cum_unrel[index.first_slot(k)];
    }
    out.total_related = cum_rel[slots];
    out.total_unrelated = cum_unrel[slots];
    return out;
}

}  // namespace

BandCounts band_counts(const PairTable& table, const DistanceBandSet& bands) {
    return band_counts(table, BandIndex(table, bands));
}

BandCounts band_counts(const PairTable& table, const BandIndex& index) {
    check_index(table, index);
    const std::size_t n = table.size();
    std::vector<std::uint64_t> hist(2 * index.slot_count(), 0);
    const auto marks = table.marks();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            ++hist[2 * index.slot(i, j) + marks[i * n + j]];
        }
    }
    return counts_from_histogram(index, hist);
}

BandCounts band_counts(const BandIndex& index, const RelatednessRule& rule, std::span<const double> onsets) {
    const std::size_t n = index.case_count();
    if (onsets.size() != n) throw Error(ErrorCode::InvalidArgument, "onset vector length does not match case count");
    std::vector<std::uint64_t> hist(2 * index.slot_count(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double ti = onsets[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            ++hist[2 * index.slot(i, j) + (rule.related(ti, onsets[j]) ? 1 : 0)];
        }
    }
    return counts_from_histogram(index, hist);
}

BandCounts weighted_band_counts(const PairTable& table, const BandIndex& index,
                                std::span<const std::uint32_t> multiplicity) {
    check_index(table, index);
    const std::size_t n = table.size();
    if (multiplicity.size() != n) throw Error(ErrorCode::InvalidArgument, "multiplicity vector length mismatch");
    std::vector<std::size_t> present;
    present.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (multiplicity[i] > 0) present.push_back(i);
    }
    std::vector<std::uint64_t> hist(2 * index.slot_count(), 0);
    const auto marks = table.marks();
    for (std::size_t i : present) {
        const std::uint64_t ci = multiplicity[i];
        for (std::size_t j : present) {
            if (i == j) continue;
            hist[2 * index.slot(i, j) + marks[i * n + j]] += ci * multiplicity[j];
        }
    }
    return counts_from_histogram(index, hist);
}

MarkCounts mark_counts(const PairTable& table, const DistanceBandSet& bands) {
    return mark_counts(table, BandIndex(table, bands));
}

MarkCounts mark_counts(const PairTable& table, const BandIndex& index) {
    check_index(table, index);
    const std::size_t n = table.size();
    const std::size_t nb = index.band_count();
    const std::size_t slots = index.slot_count();
    MarkCounts mc;
    mc.cases = n;
    mc.bands = nb;
    mc.related.assign(n * nb, 0);
    mc.unrelated.assign(n * nb, 0);
    mc.total_related.assign(n, 0);
    mc.total_unrelated.assign(n, 0);

    std::vector<std::uint32_t> hist(2 * slots);
    std::vector<std::uint32_t> cum_rel(slots + 1), cum_unrel(slots + 1);
    const auto marks = table.marks();
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(hist.begin(), hist.end(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            ++hist[2 * index.slot(i, j) + marks[i * n + j]];
        }
        cum_rel[0] = cum_unrel[0] = 0;
        for (std::size_t s = 0; s < slots; ++s) {
            cum_unrel[s + 1] = cum_unrel[s] + hist[2 * s];
            cum_rel[s + 1] = cum_rel[s] + hist[2 * s + 1];
        }
        for (std::size_t k = 0; k < nb; ++k) {
            mc.related[i * nb + k] = cum_rel[index.end_slot(k)] - cum_rel[index.first_slot(k)];
            mc.unrelated[i * nb + k] = cum_unrel[index.end_slot(k)] - cum_unrel[index.first_slot(k)];
        }
        mc.total_related[i] = cum_rel[slots];
        mc.total_unrelated[i] = cum_unrel[slots];
    }
    return mc;
}

}  // namespace taustat
