#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "taustat/bands.hpp"
#include "taustat/cases.hpp"

namespace taustat {

/// Pairwise distances and relatedness marks for every ordered pair i != j.
///
/// Distances are stored once and shared between tables that differ only in their
/// onset times (permutation replicates); marks are recomputed per table.
class PairTable {
public:
    [[nodiscard]] static PairTable build(const CaseSet& cases, const RelatednessRule& rule);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t ordered_pairs() const noexcept { return n_ * (n_ - 1); }
    [[nodiscard]] double distance(std::size_t i, std::size_t j) const noexcept { return (*dist_)[i * n_ + j]; }
    [[nodiscard]] bool related(std::size_t i, std::size_t j) const noexcept { return marks_[i * n_ + j] != 0; }
    /// Row-major n x n; diagonal entries are 0 and never read.
    [[nodiscard]] std::span<const double> distances() const noexcept { return *dist_; }
    [[nodiscard]] std::span<const std::uint8_t> marks() const noexcept { return marks_; }
    [[nodiscard]] std::span<const double> onsets() const noexcept { return onsets_; }
    [[nodiscard]] const RelatednessRule& rule() const noexcept { return rule_; }

    /// Same locations and distances, marks recomputed from new onset times.
    [[nodiscard]] PairTable with_onsets(std::span<const double> onsets) const;

private:
    PairTable() = default;
    void compute_marks();

    std::size_t n_ = 0;
    std::shared_ptr<const std::vector<double>> dist_;
    std::vector<std::uint8_t> marks_;
    std::vector<double> onsets_;
    RelatednessRule rule_;
};

/// Pre-binned distances for one band set.
///
/// All distinct band edges e_0 < ... < e_{K-1} partition [0, inf) into K + 1 slots;
/// slot s holds distances in [e_{s-1}, e_s). A band [e_a, e_b) is exactly slots a+1..b,
/// which gives the half-closed convention (ties at an edge go to the upper band).
/// Depends only on distances, so one index serves every permutation and resample.
class BandIndex {
public:
    BandIndex(const PairTable& table, const DistanceBandSet& bands);

    [[nodiscard]] std::size_t case_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t band_count() const noexcept { return first_slot_.size(); }
    [[nodiscard]] std::size_t slot_count() const noexcept { return slots_; }
    [[nodiscard]] std::uint16_t slot(std::size_t i, std::size_t j) const noexcept { return slot_[i * n_ + j]; }
    /// Band k covers cumulative-count positions [first_slot(k), end_slot(k)).
    [[nodiscard]] std::size_t first_slot(std::size_t k) const noexcept { return first_slot_[k]; }
    [[nodiscard]] std::size_t end_slot(std::size_t k) const noexcept { return end_slot_[k]; }
    [[nodiscard]] const DistanceBandSet& bands() const noexcept { return bands_; }

private:
    std::size_t n_ = 0;
    std::size_t slots_ = 0;
    std::vector<std::uint16_t> slot_;
    std::vector<std::size_t> first_slot_;
    std::vector<std::size_t> end_slot_;
    DistanceBandSet bands_;
};

/// Ordered-pair counts per band plus the all-distance totals for [0, inf).
struct BandCounts {
    std::vector<std::uint64_t> related;
    std::vector<std::uint64_t> unrelated;
    std::uint64_t total_related = 0;
    std::uint64_t total_unrelated = 0;

    friend bool operator==(const BandCounts&, const BandCounts&) = default;
};

/// Per-case decomposition m_i(band, k) of BandCounts.
struct MarkCounts {
    std::size_t cases = 0;
    std::size_t bands = 0;
    std::vector<std::uint32_t> related;    // cases x bands, row-major
    std::vector<std::uint32_t> unrelated;  // cases x bands, row-major
    std::vector<std::uint32_t> total_related;
    std::vector<std::uint32_t> total_unrelated;

    [[nodiscard]] std::uint32_t related_at(std::size_t i, std::size_t k) const noexcept { return related[i * bands + k]; }
    [[nodiscard]] std::uint32_t unrelated_at(std::size_t i, std::size_t k) const noexcept { return unrelated[i * bands + k]; }

    friend bool operator==(const MarkCounts&, const MarkCounts&) = default;
};

[[nodiscard]] inline PairTable build_pair_table(const CaseSet& cases, const RelatednessRule& rule) {
    return PairTable::build(cases, rule);
}

[[nodiscard]] BandCounts band_counts(const PairTable& table, const DistanceBandSet& bands);
[[nodiscard]] BandCounts band_counts(const PairTable& table, const BandIndex& index);

/// Band counts for the given onsets without materialising a new mark table; this is the
/// permutation-null hot path. `onsets` must have one entry per case in table order.
[[nodiscard]] BandCounts band_counts(const BandIndex& index, const RelatednessRule& rule,
                                     std::span<const double> onsets);

/// Band counts of a resample in which case i appears multiplicity[i] times. Ordered slot
/// pairs that hold the same original case are excluded, so each distinct ordered case pair
/// (i, j) contributes multiplicity[i] * multiplicity[j].
[[nodiscard]] BandCounts weighted_band_counts(const PairTable& table, const BandIndex& index,
                                              std::span<const std::uint32_t> multiplicity);

[[nodiscard]] MarkCounts mark_counts(const PairTable& table, const DistanceBandSet& bands);
[[nodiscard]] MarkCounts mark_counts(const PairTable& table, const BandIndex& index);

}  // namespace taustat
