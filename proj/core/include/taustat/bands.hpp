#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taustat {

/// Half-closed annulus [d_low, d_high) in metres.
struct DistanceBand {
    double d_low = 0.0;
    double d_high = 0.0;

    [[nodiscard]] bool contains(double d) const noexcept { return d >= d_low && d < d_high; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (d_low + d_high); }

    friend bool operator==(const DistanceBand&, const DistanceBand&) = default;
};

/// Ordered set of bands. Bands may overlap, but midpoints must be strictly increasing
/// so that tau can be read off a tau-distance graph by interpolation.
class DistanceBandSet {
public:
    DistanceBandSet() = default;

    /// Throws Error{InvalidArgument} on an empty list, a band violating 0 <= d_low < d_high,
    /// or non-increasing midpoints.
    explicit DistanceBandSet(std::vector<DistanceBand> bands);

    [[nodiscard]] std::size_t size() const noexcept { return bands_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bands_.empty(); }
    [[nodiscard]] const DistanceBand& operator[](std::size_t k) const { return bands_[k]; }
    [[nodiscard]] std::span<const DistanceBand> bands() const noexcept { return bands_; }
    [[nodiscard]] std::span<const double> midpoints() const noexcept { return midpoints_; }

    /// Compact textual form "lo:hi,lo:hi,...", accepted back by parse().
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] static DistanceBandSet parse(std::string_view text);

    /// {[0,10), [0,12), ..., [0,50), [2,52), [4,54), ..., [74,124)} metres.
    [[nodiscard]] static DistanceBandSet overlapping();
    /// {[0,7), [7,15), [15,20), [20,25), ..., [195,200)} metres.
    [[nodiscard]] static DistanceBandSet non_overlapping();

    friend bool operator==(const DistanceBandSet& a, const DistanceBandSet& b) { return a.bands_ == b.bands_; }

private:
    std::vector<DistanceBand> bands_;
    std::vector<double> midpoints_;
};

}  // namespace taustat
