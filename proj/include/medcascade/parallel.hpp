#pragma once

#include <cstddef>
#include <functional>

namespace medcascade {

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to `threads`
/// workers. Chunk boundaries depend only on n and the worker count, and each
/// index is visited exactly once, so callers writing into pre-sized slots get
/// results independent of scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

/// Hardware concurrency, at least 1.
unsigned default_threads();

}  // namespace medcascade
