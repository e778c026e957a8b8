#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace polyint {

/// Number of worker threads used by the library sweeps. 0 selects
/// std::thread::hardware_concurrency().
void set_worker_count(unsigned workers);
unsigned worker_count();

/// Runs body(i) for i in [0, n). Indices are strided across workers and each
/// worker visits its indices in increasing order, so results written per index
/// are independent of scheduling. If any call throws, indices above the lowest
/// failing one are skipped and the exception from the lowest failing index is
/// rethrown, which keeps error reporting deterministic too.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n == 0 ? 1 : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> first_failure{n};
  std::mutex guard;
  std::exception_ptr error;
  std::size_t error_index = n;
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      if (i > first_failure.load(std::memory_order_relaxed)) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        std::size_t seen = first_failure.load();
        while (i < seen && !first_failure.compare_exchange_weak(seen, i)) {
        }
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace polyint
