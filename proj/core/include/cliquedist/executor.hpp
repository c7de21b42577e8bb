#pragma once

#include <cstddef>
#include <functional>

namespace cliquedist {

// Worker-pool abstraction handed down from the CLI. Library code never owns
// threads beyond a parallel_for call, and every caller is required to write
// results into per-index slots so that the worker count cannot change any
// numerical output.
class Executor {
 public:
  explicit Executor(unsigned workers = 1);

  unsigned workers() const { return workers_; }

  // Runs body(0..count-1). Order of execution is unspecified; nested calls
  // from inside a body run inline.
  void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) const;

  static const Executor& serial();

 private:
  unsigned workers_;
};

// Worker count from the environment (CLIQUEDIST_WORKERS) or hardware.
unsigned default_worker_count();

}  // namespace cliquedist
