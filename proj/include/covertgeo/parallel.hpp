#pragma once

#include <cstdint>
#include <functional>

namespace covertgeo {

/// Worker count for parallel loops: the COVERTGEO_THREADS environment
/// variable when set, else hardware concurrency. The override exists for
/// determinism tests.
int worker_count();
void set_worker_count_override(int n);  // 0 restores the default

/// Run fn(begin, end) over a static contiguous partition of [0, n) across
/// workers. Nested calls run serially, so estimators stay parallel inside
/// parallel sweeps without oversubscription. Exceptions from workers are
/// rethrown on the caller.
void parallel_partition(std::uint64_t n,
                        const std::function<void(std::uint64_t, std::uint64_t, int)>& fn);

}  // namespace covertgeo
