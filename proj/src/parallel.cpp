// SPDX-License-Identifier: Apache-2.0
#include "mamimo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mamimo {

int effective_threads(int requested) {
  if (requested > 0) {
    return requested;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 16u));
}

void parallel_chunks(
    std::int64_t n, int threads,
    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& body) {
  if (n <= 0) {
    return;
  }
  const std::int64_t chunks = chunk_count(n);
  const auto run_chunk = [&](std::int64_t c) {
    const std::int64_t begin = c * kParallelChunk;
    const std::int64_t end = std::min(n, begin + kParallelChunk);
    body(c, begin, end);
  };

  const int workers = std::min<std::int64_t>(effective_threads(threads), chunks);
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) {
      run_chunk(c);
    }
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::int64_t c = next.fetch_add(1); c < chunks;
             c = next.fetch_add(1)) {
          run_chunk(c);
        }
      } catch (...) {
        const std::scoped_lock lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace mamimo
