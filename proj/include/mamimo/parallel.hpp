// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace mamimo {

// Number of worker threads to use for `requested` (<= 0 means automatic).
int effective_threads(int requested);

// Deterministic chunked loop over [0, n): workers claim fixed-size chunks,
// so the chunk decomposition never depends on the worker count and any
// reduction that merges per-chunk results in chunk order is bit-reproducible.
// `body(chunk_index, begin, end)` must not touch state shared across chunks.
void parallel_chunks(
    std::int64_t n, int threads,
    const std::function<void(std::int64_t chunk_index, std::int64_t begin,
                             std::int64_t end)>& body);

// Chunk size used by parallel_chunks; exposed so callers can size per-chunk
// accumulator arrays.
constexpr std::int64_t kParallelChunk = 512;

inline std::int64_t chunk_count(std::int64_t n) {
  return (n + kParallelChunk - 1) / kParallelChunk;
}

}  // namespace mamimo
