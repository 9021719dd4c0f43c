#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace roulette {

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [begin, end) on up to nthreads threads.  Work items are
// claimed from a shared atomic counter, so results must be written to
// per-index slots; the output is then independent of scheduling.
inline void parallel_for(int64_t begin, int64_t end,
                         const std::function<void(int64_t)>& fn,
                         unsigned nthreads) {
  if (end <= begin) return;
  if (nthreads <= 1 || end - begin == 1) {
    for (int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next(begin);
  auto worker = [&] {
    for (;;) {
      int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= end) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned n = nthreads;
  if (static_cast<int64_t>(n) > end - begin) n = static_cast<unsigned>(end - begin);
  pool.reserve(n - 1);
  for (unsigned t = 0; t + 1 < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace roulette
