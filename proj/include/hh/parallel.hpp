#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hh {

/**
 * Runs fn(i) for every i in [0, n) on up to `jobs` threads.  Indices are
 * handed out through a shared counter, so the schedule varies between runs;
 * tasks must write results into preallocated per-index slots, which keeps
 * the assembled output independent of worker count.  The first exception
 * thrown by any task is rethrown on the calling thread.
 */
template <typename Fn>
void parallel_for(long long n, int jobs, Fn&& fn) {
  if (n <= 0) return;
  long long threads = std::min<long long>(jobs < 1 ? 1 : jobs, n);
  if (threads <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      long long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (long long t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hh
