#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace rmtedge::detail {

// Splits [0, count) into contiguous chunks, one thread per chunk. body(i)
// must only write to slot i of its outputs.
template <class Body>
void parallel_for(std::int64_t count, int workers, Body body) {
  workers = std::max(1, workers);
  if (workers == 1 || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([=, &body] {
      for (std::int64_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rmtedge::detail
