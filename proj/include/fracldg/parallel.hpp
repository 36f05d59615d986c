#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace fracldg {

// Runs fn(i) for i in [0, n) on the given number of threads. Work items must
// write to disjoint state; results are then independent of the schedule.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min(threads, n);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace fracldg
