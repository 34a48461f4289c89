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

namespace palcolor {

/// Worker count used when the caller passes 0.
inline unsigned available_parallelism() noexcept {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Resolves a requested thread count: explicit value, else the
/// PALCOLOR_THREADS environment variable, else available parallelism.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PALCOLOR_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return available_parallelism();
}

/// Runs body(block) for every block in [0, num_blocks) on up to `threads`
/// workers with dynamic scheduling. Callers must write results into
/// per-block slots so the outcome does not depend on scheduling. The first
/// exception thrown by any block is rethrown on the calling thread.
template <class Body>
void parallel_for_blocks(std::size_t num_blocks, unsigned threads, Body&& body) {
  threads = resolve_threads(threads);
  if (threads <= 1 || num_blocks <= 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) body(b);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, num_blocks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= num_blocks) return;
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace palcolor
