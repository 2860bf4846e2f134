#pragma once

#include <cstddef>
#include <functional>

namespace gcm {

/// Worker count used by internal parallel loops. 0 (the default) means
/// std::thread::hardware_concurrency().
void set_thread_count(unsigned threads) noexcept;
unsigned thread_count() noexcept;

/// Runs body(i) for i in [0, count). Each index is visited exactly once;
/// callers write results into per-index slots so output never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gcm
