#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace seqk {

/// Runs f(i) for i in [begin, end) across `threads` workers in contiguous
/// chunks. Each index must touch disjoint state; results are then identical
/// to a sequential run. threads <= 1 executes inline.
template <class F>
void parallel_for(std::size_t begin, std::size_t end, int threads, F&& f) {
  const std::size_t n = end > begin ? end - begin : 0;
  if (n == 0) return;
  if (threads <= 1 || n == 1) {
    for (std::size_t i = begin; i < end; ++i) f(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace seqk
