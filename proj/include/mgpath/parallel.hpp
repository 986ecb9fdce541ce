#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mgpath {

/// Worker cap from MGPATH_THREADS (0 or unset = hardware concurrency).
std::size_t worker_count();

/// Calls `fn(i)` for every i in [0, n). Work is split into fixed blocks that
/// idle workers pull from a shared counter; `fn` must write only to slots
/// owned by index i. The first exception thrown by any call is rethrown after
/// all workers stop; with several failures the lowest index wins so the
/// reported error does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t block = 1024) {
  const std::size_t n_blocks = (n + block - 1) / block;
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(n_blocks, 1));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = n;

  auto body = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      const std::size_t end = std::min(n, (b + 1) * block);
      for (std::size_t i = b * block; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          break;
        }
      }
    }
  };

  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mgpath
