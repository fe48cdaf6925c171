#pragma once

#include <cstddef>
#include <functional>

namespace heatlab {

// Runs fn(begin, end, block) over [0, n) split into `threads` contiguous
// blocks. Block boundaries depend only on (n, threads), so per-block
// partial results reduced in block order give deterministic totals.
// threads <= 1 runs everything inline.
void parallel_for_blocks(
    std::size_t n, int threads,
    const std::function<void(std::size_t, std::size_t, int)>& fn);

// Hardware concurrency clamped to [1, 16].
int default_threads();

}  // namespace heatlab
