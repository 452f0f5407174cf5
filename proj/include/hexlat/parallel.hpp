#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "hexlat/io.hpp"

namespace hexlat {

inline constexpr long kParallelChunks = 64;

/// Runs body(chunk_index, begin, end) over [0, n) split into a fixed number
/// of chunks (independent of the thread count). Per-chunk results reduced in
/// chunk order are therefore bit-identical for any --threads value.
template <typename Body>
void parallel_chunks(long n, Body&& body) {
  const long nchunks = n < kParallelChunks ? (n > 0 ? n : 1) : kParallelChunks;
  const int nt = thread_count();
  if (nt <= 1 || nchunks == 1) {
    for (long c = 0; c < nchunks; ++c) {
      body(c, n * c / nchunks, n * (c + 1) / nchunks);
    }
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long c = next.fetch_add(1);
      if (c >= nchunks) return;
      body(c, n * c / nchunks, n * (c + 1) / nchunks);
    }
  };
  std::vector<std::thread> pool;
  const int nw = int(std::min<long>(nt, nchunks));
  pool.reserve(std::size_t(nw));
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& w : pool) w.join();
}

}  // namespace hexlat
