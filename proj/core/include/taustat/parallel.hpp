#pragma once

#include <cstddef>
#include <functional>

namespace taustat {

/// Thread count to use: `requested` if nonzero, else the TAUSTAT_THREADS environment
/// variable if set, else std::thread::hardware_concurrency() (at least 1).
[[nodiscard]] unsigned resolve_threads(unsigned requested = 0);

/// Runs body(i) for i in [0, count) across `threads` workers. Work items are handed out
/// dynamically; body must only write to state owned by item i. If an item throws, remaining
/// items are abandoned and one of the exceptions is rethrown after all workers join.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace taustat
