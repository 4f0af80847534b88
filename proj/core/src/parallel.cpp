#include "apfree/parallel.hpp"

#include <exception>
#include <thread>
#include <vector>

namespace apfree {

unsigned clamp_threads(unsigned requested, std::uint64_t work_items) {
  if (requested == 0) requested = 1;
  if (work_items < requested) requested = static_cast<unsigned>(work_items ? work_items : 1);
  return requested;
}

void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned threads,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  if (end <= begin) return;
  const std::uint64_t total = end - begin;
  const unsigned t = clamp_threads(threads, total);
  if (t <= 1) {
    fn(0, begin, end);
    return;
  }

  std::vector<std::thread> workers;
  workers.reserve(t);
  std::vector<std::exception_ptr> errors(t);
  const std::uint64_t chunk = total / t;
  const std::uint64_t rem = total % t;
  std::uint64_t lo = begin;
  for (unsigned i = 0; i < t; ++i) {
    const std::uint64_t hi = lo + chunk + (i < rem ? 1 : 0);
    workers.emplace_back([&fn, &errors, i, lo, hi] {
      try {
        fn(i, lo, hi);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    lo = hi;
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace apfree
