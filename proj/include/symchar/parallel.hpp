#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace symchar {

/// Splits [0, count) into `threads` contiguous chunks and runs
/// fn(chunk_index, begin, end) for each, one thread per chunk. Callers merge
/// per-chunk results in chunk order, so output never depends on scheduling.
/// The first exception thrown by any chunk is rethrown after all threads join.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    fn(0u, std::uint64_t{0}, count);
    return;
  }
  const auto chunks = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    const std::uint64_t begin = count * c / chunks;
    const std::uint64_t end = count * (c + 1) / chunks;
    pool.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of chunks parallel_chunks will use for `count` items.
inline unsigned chunk_count(std::uint64_t count, unsigned threads) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) return 1;
  return static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
}

}  // namespace symchar
