#pragma once

#include <cstddef>
#include <functional>

namespace bovw {

// Resolves a --jobs style value: <= 0 means "use all hardware threads".
int resolve_jobs(int jobs);

// Runs fn(i) for i in [0, n). Items must be independent; results keyed by
// index are deterministic for any worker count.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

// Runs fn(chunk_idx, begin, end) over fixed-size chunks. Chunk boundaries
// depend only on (n, chunk_size), so per-chunk partial results merged in
// chunk order reduce identically for any worker count.
void parallel_chunks(std::size_t n, std::size_t chunk_size, int jobs,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) {
  return n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

}  // namespace bovw
