#pragma once

#include <cstddef>
#include <functional>

namespace modica {

// Global worker count used by cell-parallel loops. 1 = serial (default).
void set_thread_count(int k);
int thread_count();

// Runs fn(begin, end) over a static partition of [0, n) into contiguous
// ranges, one per worker. Ranges are disjoint, so elementwise writes are
// race-free and the result is independent of the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Reduction helper: maps fixed-size chunks of [0, n) through `chunk_fn`
// (possibly in parallel) and combines the per-chunk values in chunk order.
// The chunk size does not depend on the thread count, so any reduction is
// reproducible bit for bit across thread counts.
double chunked_reduce(std::size_t n,
                      const std::function<double(std::size_t, std::size_t)>& chunk_fn,
                      const std::function<double(double, double)>& combine,
                      double init);

}  // namespace modica
