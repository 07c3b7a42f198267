#pragma once

#include <cstddef>
#include <functional>

namespace stochrel {

/// Worker count: hardware concurrency capped by the STOCHREL_THREADS
/// environment variable (at least 1).
std::size_t worker_count();

/// Runs fn(begin, end) over contiguous chunks of [0, n), one chunk per worker.
/// Chunk boundaries depend only on n and the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace stochrel
