#pragma once
// Fan-out over independent jobs. Results land in input order, so output does
// not depend on scheduling. CURLSYM_WORKERS sets the thread count.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace curlsym {

inline int worker_count() {
  if (const char* s = std::getenv("CURLSYM_WORKERS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class R, class F>
std::vector<R> parallel_map(int count, F f, int workers = worker_count()) {
  std::vector<R> out(std::size_t(std::max(count, 0)));
  std::vector<std::exception_ptr> errs(out.size());
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i; (i = next++) < count;) {
      try {
        out[std::size_t(i)] = f(i);
      } catch (...) {
        errs[std::size_t(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < std::min(workers, count); ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace curlsym
