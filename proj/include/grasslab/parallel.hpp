#pragma once

#include <cstddef>
#include <functional>

namespace grasslab {

/// Worker count: GRASSLAB_THREADS env override, else hardware concurrency.
unsigned thread_count();

/// Run fn(block, begin, end) over a fixed, thread-count-independent block
/// decomposition of [0, n). Blocks are disjoint; callers that aggregate must
/// merge per-block results in block order so output never depends on timing.
void parallel_blocks(std::size_t n,
                     const std::function<void(unsigned block, std::size_t begin, std::size_t end)>& fn);

/// Number of blocks parallel_blocks will use for a given n (for sizing
/// per-block accumulators).
unsigned block_count(std::size_t n);

}  // namespace grasslab
