#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sdc {

// Calls fn(i) for i in [0, count) on up to `threads` threads. The first
// exception thrown by any call is rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) fn(i);
  };
  unsigned t = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (t <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (unsigned k = 0; k < t; ++k)
    pool.emplace_back([&, k] {
      try {
        worker();
      } catch (...) {
        errors[k] = std::current_exception();
        next = count;
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sdc
