#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace skewlab {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(shard) for shard in [0, n_shards). Shards are claimed dynamically,
// so callers must write results into per-shard slots and combine them in
// shard order afterwards; outputs are then independent of the thread count.
template <class Fn>
void parallel_shards(std::size_t n_shards, unsigned n_threads, Fn&& fn) {
  n_threads = resolve_threads(n_threads);
  if (n_threads <= 1 || n_shards <= 1) {
    for (std::size_t i = 0; i < n_shards; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_shards) return;
      try {
        fn(i);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
        next.store(n_shards);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned use = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, n_shards));
  pool.reserve(use);
  for (unsigned t = 0; t < use; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace skewlab
