#pragma once

#include <cstddef>
#include <functional>

namespace causticlab {

// Runs fn(0..count-1) on up to `threads` workers (0 means hardware
// concurrency). The first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace causticlab
