#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace gmrf {

// Worker thread count. RF_CURVATURE_THREADS caps it; 0 or unset means
// hardware concurrency.
unsigned worker_threads();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// depend on the thread count, so bodies must write disjoint outputs.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Sum with a fixed binary tree over index ranges. The tree shape depends
// only on values.size(), so results are reproducible for any thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace gmrf
