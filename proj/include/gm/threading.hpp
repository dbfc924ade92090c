#pragma once

#include <cstddef>
#include <functional>

namespace gm {

// Runs fn(0..n-1), possibly on several worker threads.  Callers must make fn
// pure per index (results written to preallocated slots) and reduce in index
// order afterwards, so the outcome is identical at any worker count.
// GAUGE_MEASURE_THREADS caps the worker count.
void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn);

int worker_count();

}  // namespace gm
