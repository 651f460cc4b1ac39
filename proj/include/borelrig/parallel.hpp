#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace borelrig {

/// Runs body(worker, begin, end) over contiguous chunks of [0, count), one
/// chunk per worker. The first exception thrown by any worker is rethrown
/// after all workers have joined.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  if (workers == 1 || count <= 1) {
    body(0u, std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(count, w * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          body(w, begin, end);
        } catch (...) {
          std::lock_guard lock(guard);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace borelrig
