#pragma once

#include <cstddef>
#include <functional>

namespace lorentz {

// Number of worker threads: hardware concurrency, capped by the
// LORENTZ_MOBIUS_THREADS environment variable when set.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on worker_count() threads, contiguous blocks.
// fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lorentz
