#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace mahler {

/// Worker count: hardware concurrency, or the MAHLER_THREADS environment
/// variable when it holds a positive integer (at most 256).
unsigned thread_count();

/// Runs fn(begin, end) over contiguous blocks covering [0, n). Each index is
/// handled by exactly one call, so callers that write per-index results and
/// reduce afterwards in index order get thread-count independent output.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_block = 1) {
  const std::size_t workers =
      std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_block)));
  if (workers <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(std::size_t{0}, std::min(n, chunk));
}

}  // namespace mahler
