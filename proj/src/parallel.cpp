#include "medcascade/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace medcascade {

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, n);
  if (workers == 1) {
    body(0, n);
    return;
  }

  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  pool.clear();  // joins
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace medcascade
