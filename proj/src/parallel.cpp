#include "bovw/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bovw {

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Work-stealing-free pool: an atomic counter hands out indices. The first
// exception thrown by any worker is rethrown on the calling thread.
void run_indexed(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  jobs = resolve_jobs(jobs);
  if (jobs == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  run_indexed(n, jobs, fn);
}

void parallel_chunks(std::size_t n, std::size_t chunk_size, int jobs,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  std::size_t chunks = chunk_count(n, chunk_size);
  run_indexed(chunks, jobs, [&](std::size_t c) {
    std::size_t begin = c * chunk_size;
    std::size_t end = std::min(n, begin + chunk_size);
    fn(c, begin, end);
  });
}

}  // namespace bovw
