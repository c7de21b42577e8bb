#include "cliquedist/executor.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cliquedist {

namespace {
thread_local bool tl_inside_parallel_region = false;
}

Executor::Executor(unsigned workers) : workers_(workers == 0 ? 1 : workers) {}

const Executor& Executor::serial() {
  static const Executor exec(1);
  return exec;
}

void Executor::parallel_for(std::size_t count,
                            const std::function<void(std::size_t)>& body) const {
  if (count == 0) return;
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(workers_, count));
  if (n_threads <= 1 || tl_inside_parallel_region) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    tl_inside_parallel_region = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        // Drain the remaining indices so all workers stop promptly.
        next.store(count, std::memory_order_relaxed);
      }
    }
    tl_inside_parallel_region = false;
  };

  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("CLIQUEDIST_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace cliquedist
