#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hm {

/// Worker count used by the parallel kernels. Results never depend on it.
struct Threads {
  unsigned count = 1;

  static Threads hardware() {
    return Threads{std::max(1u, std::thread::hardware_concurrency())};
  }
};

/// Runs `body(begin, end)` over contiguous static chunks of [0, n).
/// Chunk boundaries depend only on n and the thread count, and every index
/// is visited by exactly one worker, so writes to per-index slots are
/// schedule independent. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <typename Body>
void parallel_for_chunks(std::size_t n, Threads threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads.count), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    if (n > 0) body(std::size_t{0}, n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <typename Body>
void parallel_for(std::size_t n, Threads threads, Body&& body) {
  parallel_for_chunks(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

}  // namespace hm
