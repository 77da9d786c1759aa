#pragma once

#include <cstddef>

#include "taustat/taustat.hpp"

namespace taustat::bench {

inline CaseSet outbreak(std::size_t n) {
    auto s = RngPolicy{1}.stream(StreamPurpose::Synthetic, 0);
    SyntheticOutbreak p;
    p.cases = n;
    return synthetic_outbreak(p, s);
}

inline RelatednessRule window() { return RelatednessRule::make(13, 15, false); }

}  // namespace taustat::bench
