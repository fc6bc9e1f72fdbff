#include "covertgeo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace covertgeo {

namespace {
std::atomic<int> g_override{0};
thread_local bool t_inside_parallel = false;
}  // namespace

int worker_count() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced > 0) return forced;
  if (const char* env = std::getenv("COVERTGEO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_worker_count_override(int n) {
  g_override.store(n, std::memory_order_relaxed);
}

void parallel_partition(std::uint64_t n,
                        const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  if (n == 0) return;
  const int workers =
      t_inside_parallel ? 1
                        : std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count()), n);
  if (workers <= 1) {
    fn(0, n, 0);
    return;
  }

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::atomic<bool> has_error{false};
  const std::uint64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
    const std::uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end, w] {
      t_inside_parallel = true;
      try {
        fn(begin, end, w);
      } catch (...) {
        bool expected = false;
        if (has_error.compare_exchange_strong(expected, true)) error = std::current_exception();
      }
      t_inside_parallel = false;
    });
  }
  for (auto& t : pool) t.join();
  if (has_error.load()) std::rethrow_exception(error);
}

}  // namespace covertgeo
