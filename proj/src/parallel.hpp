#pragma once

// Minimal deterministic work-sharing helper.  `parallel_for(n, body)` runs
// body(0..n-1) across a small thread pool sized by OGCLUST_THREADS (falling
// back to the hardware count).  Each index runs exactly once, results must be
// written to per-index slots, and the first exception (lowest index) is
// rethrown after all workers finish, so outcomes are identical to a serial
// loop regardless of thread count.  Nested calls run serially to avoid
// oversubscription.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

#include "types.hpp"

namespace ogclust {

inline int thread_budget() {
  const unsigned hw = std::thread::hardware_concurrency();
  int budget = hw > 0 ? int(hw) : 1;
  if (const char* env = std::getenv("OGCLUST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) budget = int(v);
  }
  return budget;
}

namespace detail {
inline bool& inside_parallel_region() {
  thread_local bool inside = false;
  return inside;
}
}  // namespace detail

template <typename Body>
void parallel_for(Index n_tasks, Body&& body) {
  if (n_tasks <= 0) return;
  const int budget = thread_budget();
  if (n_tasks == 1 || budget <= 1 || detail::inside_parallel_region()) {
    for (Index i = 0; i < n_tasks; ++i) body(i);
    return;
  }

  std::atomic<Index> next{0};
  std::vector<std::exception_ptr> errors(size_t(n_tasks), nullptr);
  auto work = [&]() {
    detail::inside_parallel_region() = true;
    for (;;) {
      const Index i = next.fetch_add(1);
      if (i >= n_tasks) break;
      try {
        body(i);
      } catch (...) {
        errors[size_t(i)] = std::current_exception();
      }
    }
  };

  const Index n_workers = std::min<Index>(Index(budget), n_tasks);
  std::vector<std::thread> pool;
  pool.reserve(size_t(n_workers));
  for (Index w = 0; w < n_workers; ++w) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ogclust
