#pragma once
// Deterministic fork-join helper. Work is cut into a fixed number of chunks
// (independent of the thread count), chunk results are combined in chunk
// order, so outputs are bit-identical no matter how many workers run.

#include <cstddef>
#include <functional>

namespace zr {

// Worker cap: min(hardware_concurrency, ZETARES_THREADS if set).
int max_threads();
void set_thread_cap(int n); // overrides the env value; n <= 0 restores it

// Runs fn(chunk_index) for chunk_index in [0, nchunks) on the worker pool.
// fn must only touch per-chunk state.
void parallel_chunks(std::size_t nchunks, const std::function<void(std::size_t)>& fn);

} // namespace zr
