#pragma once

// Row-parallel loops.  Each row is computed by exactly one worker and written to
// its own slot, so results never depend on the worker count.

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kitten {

/// Worker count used by the grid and matrix fills.  Defaults to 1.
int default_threads();
void set_default_threads(int threads);

/// Calls body(row) for row in [0, rows), rows split into contiguous blocks.
/// The first exception thrown by any worker is rethrown on the caller.
template <typename Body>
void parallel_rows(int rows, Body&& body, int threads = 0) {
  if (threads <= 0) threads = default_threads();
  threads = std::max(1, std::min(threads, rows));
  if (threads == 1) {
    for (int row = 0; row < rows; ++row) body(row);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(rows) * w / threads);
    const int end = static_cast<int>(static_cast<long long>(rows) * (w + 1) / threads);
    pool.emplace_back([&, begin, end] {
      try {
        for (int row = begin; row < end; ++row) body(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace kitten
