#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hornapq {

namespace detail {

inline std::atomic<unsigned>& thread_cap_storage() {
  static std::atomic<unsigned> cap = [] {
    if (const char* env = std::getenv("HORNAPQ_THREADS")) {
      try {
        int v = std::stoi(env);
        if (v > 0) return static_cast<unsigned>(v);
      } catch (...) {
      }
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }();
  return cap;
}

}  // namespace detail

/// Upper bound on worker threads used inside library calls. Defaults to the
/// HORNAPQ_THREADS environment variable, else the hardware concurrency.
inline unsigned thread_cap() { return detail::thread_cap_storage().load(); }

inline void set_thread_cap(unsigned cap) { detail::thread_cap_storage().store(std::max(1u, cap)); }

/// Runs body(i) for i in [0, count) on up to thread_cap() workers. Indices are
/// handed out dynamically; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hornapq
