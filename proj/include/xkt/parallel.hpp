#pragma once

// Static-partition parallel loop. Work items write to disjoint output
// slots, so results do not depend on the worker count; reductions are done
// serially by the callers in a fixed order.

#include <cstdint>
#include <thread>
#include <vector>

namespace xkt {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

template <class Fn>
void parallel_for(std::int64_t count, int threads, Fn&& body) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count < 2) {
    body(std::int64_t{0}, count);
    return;
  }
  if (threads > count) threads = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::int64_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t begin = t * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace xkt
