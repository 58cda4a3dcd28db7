#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace nilaw {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

// Runs body(task_index) for every index in [0, tasks). Each task must write
// only to its own slot so the merged result is independent of scheduling and
// of the worker count.
inline void run_tasks(size_t tasks, int workers, const std::function<void(size_t)>& body) {
  workers = resolve_workers(workers);
  if (tasks == 0) return;
  if (workers == 1 || tasks == 1) {
    for (size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::atomic<size_t> cursor{0};
  auto pump = [&] {
    for (;;) {
      size_t t = cursor.fetch_add(1);
      if (t >= tasks) return;
      body(t);
    }
  };
  size_t nthreads = std::min<size_t>(size_t(workers), tasks);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(pump);
  for (auto& th : pool) th.join();
}

struct ChunkRange {
  uint64_t lo = 0;
  uint64_t hi = 0;
};

// Contiguous chunks covering [0, total); counts/partial sums merged in chunk
// order give worker-count-independent results.
inline std::vector<ChunkRange> make_chunks(uint64_t total, int workers, uint64_t min_chunk = 1024) {
  std::vector<ChunkRange> chunks;
  if (total == 0) return chunks;
  uint64_t want = uint64_t(resolve_workers(workers)) * 8;
  uint64_t size = total / want;
  if (size < min_chunk) size = min_chunk;
  for (uint64_t lo = 0; lo < total; lo += size) chunks.push_back({lo, std::min(lo + size, total)});
  return chunks;
}

}  // namespace nilaw
