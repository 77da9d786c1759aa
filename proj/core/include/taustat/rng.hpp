#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace taustat {

/// Independent uses of randomness; each gets its own family of substreams.
enum class StreamPurpose : std::uint64_t {
    NullPermutation = 1,
    Bootstrap = 2,
    PlotJitter = 3,
    Synthetic = 4,
};

/// Random substream. Draw algorithms are implemented here rather than through
/// std::uniform_int_distribution so that sequences are identical across standard
/// library implementations.
class RngStream {
public:
    explicit RngStream(std::seed_seq& seq) : engine_(seq) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// Master seed plus the rule replicate index -> substream. Substream k depends only on
/// (master_seed, purpose, k), so results do not depend on how replicates are scheduled.
struct RngPolicy {
    std::uint64_t master_seed = 0;

    [[nodiscard]] RngStream stream(StreamPurpose purpose, std::uint64_t index) const;
};

}  // namespace taustat
