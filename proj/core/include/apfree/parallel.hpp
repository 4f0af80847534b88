#pragma once

#include <cstdint>
#include <functional>

namespace apfree {

unsigned clamp_threads(unsigned requested, std::uint64_t work_items);

// Splits [begin, end) into one contiguous chunk per worker and runs
// fn(worker, chunk_begin, chunk_end) on each. The partition depends only on
// (begin, end, threads); callers merge per-worker results in worker order so
// output is identical for every thread count.
void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned threads,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn);

}  // namespace apfree
