#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fpdioph {

// results[i] = fn(i) for i in [0, n), computed by up to `workers` threads
// pulling indices from a shared counter. The first exception is rethrown
// after all workers have joined.
template <class Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < n && !failed; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    }
  };

  const unsigned count = std::clamp<unsigned>(workers, 1U, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (count == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace fpdioph
