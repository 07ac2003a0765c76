#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pok::detail {

// Calls fn(i) for i in [0, count) on up to `jobs` threads. Results are written
// by index, so the outcome does not depend on scheduling. Returns one
// exception_ptr per index (null on success).
template <typename Fn>
std::vector<std::exception_ptr> parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(jobs == 0 ? 1 : jobs, count));
  if (threads <= 1) {
    worker();
    return errors;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return errors;
}

}  // namespace pok::detail
