#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace amal {

inline int default_jobs() {
  if (const char* env = std::getenv("AMALGAM_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(chunk, begin, end) over [0, n) split into fixed chunks claimed by a
// work-stealing counter. Callers keep per-chunk outputs and merge them in
// chunk order, so results do not depend on scheduling.
template <typename Fn>
void parallel_chunks(std::size_t n, int jobs, std::size_t chunk_count,
                     Fn&& fn) {
  if (n == 0) return;
  if (chunk_count == 0) chunk_count = 1;
  if (chunk_count > n) chunk_count = n;
  if (jobs <= 1 || chunk_count == 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) {
      const std::size_t b = c * n / chunk_count;
      const std::size_t e = (c + 1) * n / chunk_count;
      fn(c, b, e);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunk_count) return;
      const std::size_t b = c * n / chunk_count;
      const std::size_t e = (c + 1) * n / chunk_count;
      fn(c, b, e);
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min<std::size_t>(jobs, chunk_count);
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace amal
