#pragma once

#include <cstddef>

#include "taustat/cases.hpp"
#include "taustat/rng.hpp"

namespace taustat {

/// Parameters of a toy outbreak on a rectangular village.
struct SyntheticOutbreak {
    std::size_t cases = 188;
    double width = 280.0;   ///< metres
    double height = 240.0;  ///< metres
    /// Probability that a case is infected by an earlier case nearby rather than seeded at a
    /// uniformly random location. 0 gives no spatiotemporal clustering.
    double local_transmission = 0.8;
    double spread_sd = 15.0;     ///< metres, offset from the infector
    double serial_mean = 11.0;   ///< days
    double serial_sd = 2.5;      ///< days
};

/// Case set for tests and benchmarks. Each case after the first picks an earlier case as
/// infector: with probability local_transmission it is placed near that infector with onset
/// one serial interval later; otherwise location and onset are independent. Onsets are
/// rounded to whole days and coordinates to 0.1 m so that ties occur as in real line-lists.
[[nodiscard]] CaseSet synthetic_outbreak(const SyntheticOutbreak& p, RngStream& stream);

/// Locations and onsets drawn independently, so "no clustering" holds exactly.
[[nodiscard]] CaseSet synthetic_null(std::size_t n, double extent, double onset_span, RngStream& stream);

}  // namespace taustat
