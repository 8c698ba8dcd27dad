#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace newman {

unsigned default_jobs();

/// Runs body(worker, workers) on `workers` threads (the caller is worker 0) and
/// rethrows the first exception raised by any of them.
template <class Body>
void run_workers(unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto guarded = [&](unsigned w) {
    try {
      body(w, workers);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < workers; ++w) threads.emplace_back(guarded, w);
  guarded(0);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

/// body(i) for every i < count, items dealt round-robin to the workers.
template <class Body>
void parallel_for(unsigned workers, std::size_t count, Body&& body) {
  run_workers(workers, [&](unsigned w, unsigned total) {
    for (std::size_t i = w; i < count; i += total) body(i);
  });
}

}  // namespace newman
