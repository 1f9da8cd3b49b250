#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kgforge {

inline unsigned default_workers() noexcept { return std::max(1U, std::thread::hardware_concurrency()); }

/// Runs `body(begin, end, worker)` over `workers` contiguous slices of
/// [0, n). The slicing depends only on (n, workers). The first exception
/// thrown by any worker is rethrown after all workers joined.
template <typename Body>
void parallel_slices(std::size_t n, unsigned workers, Body&& body) {
  workers = std::max(1U, workers);
  if (workers == 1 || n < 2) {
    body(std::size_t{0}, n, 0U);
    return;
  }
  auto count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> threads;
  threads.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    std::size_t begin = n * w / count;
    std::size_t end = n * (w + 1) / count;
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Dynamic scheduling of `n` independent items over `workers` threads.
template <typename Body>
void parallel_for_each_index(std::size_t n, unsigned workers, Body&& body) {
  workers = std::max(1U, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::mutex mutex;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::jthread> threads;
  threads.reserve(count);
  for (unsigned w = 0; w < count; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mutex);
          if (next >= n || failure) return;
          i = next++;
        }
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace kgforge
