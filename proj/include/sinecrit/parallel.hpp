// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SINECRIT_PARALLEL_HPP
#define SINECRIT_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sinecrit {

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "SINECRIT_WORKERS";

/// Worker count from SINECRIT_WORKERS, else the hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `task(i)` for i in [0, n_tasks) on up to `workers` threads and
/// returns the results in task order. The first exception thrown by any
/// task is rethrown after all workers join.
template <typename Task>
auto run_tasks(std::size_t n_tasks, unsigned workers, Task&& task)
    -> std::vector<decltype(task(std::size_t{}))> {
  using Result = decltype(task(std::size_t{}));
  std::vector<Result> results(n_tasks);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                         std::max<std::size_t>(n_tasks, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) results[i] = task(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_tasks) return;
        try {
          results[i] = task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(n_tasks);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// Splits `trials` into fixed-size chunks; chunk boundaries depend only on
/// `trials` and `chunk`, never on the worker count.
struct TrialChunks {
  std::size_t trials;
  std::size_t chunk;

  std::size_t count() const { return chunk == 0 ? 0 : (trials + chunk - 1) / chunk; }
  std::size_t begin(std::size_t i) const { return i * chunk; }
  std::size_t end(std::size_t i) const { return std::min(trials, (i + 1) * chunk); }
};

}  // namespace sinecrit

#endif  // SINECRIT_PARALLEL_HPP
