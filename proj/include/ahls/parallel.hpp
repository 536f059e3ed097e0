#pragma once

#include <cstddef>
#include <functional>

namespace ahls {

// Runs fn(i) for i in [0, count) on a fixed pool of worker threads. Each index
// writes only its own output slot, so results do not depend on scheduling.
// The exception thrown for the smallest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// Worker count; honours AHLS_THREADS when set.
unsigned worker_count();

}  // namespace ahls
