#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace mft {

// Worker cap: the MFT_THREADS environment variable when set to a positive
// integer, hardware concurrency otherwise.
inline unsigned worker_count() {
  if (const char* env = std::getenv("MFT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(std::min(v, 1024L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0, n).
// Chunk boundaries depend only on n and chunk_size, never on the worker
// count, so per-chunk results can be reduced in chunk order to make the
// final result independent of scheduling.
template <class Fn>
void for_each_chunk(std::uint64_t n, std::uint64_t chunk_size, Fn&& fn) {
  if (n == 0) return;
  const std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(worker_count(), n_chunks));

  auto run_chunk = [&](std::uint64_t ci) {
    fn(ci, ci * chunk_size, std::min(n, (ci + 1) * chunk_size));
  };

  if (workers <= 1) {
    for (std::uint64_t ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t ci = next.fetch_add(1); ci < n_chunks;
           ci = next.fetch_add(1)) {
        run_chunk(ci);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mft
