#pragma once

#include <cstddef>
#include <functional>

namespace qens::detail {

// Runs fn(i) for every i in [0, count). With threads > 1 the indices are
// distributed over worker threads; fn(i) must touch only state owned by
// index i, which makes the result identical for every thread count (only
// wall time changes). The first exception thrown by fn is rethrown on the
// calling thread.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace qens::detail
