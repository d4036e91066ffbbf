#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace plcsim {

inline unsigned resolve_worker_count(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns
// the results indexed by i. Scheduling never affects the result vector. If
// any call throws, the exception from the lowest index is rethrown.
template <typename Fn>
auto map_indices(std::size_t count, unsigned workers, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(resolve_worker_count(workers), count));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace plcsim
