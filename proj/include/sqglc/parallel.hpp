#ifndef SQGLC_PARALLEL_HPP_
#include <utility>
#define SQGLC_PARALLEL_HPP_

#include <cstdlib>
#include <thread>
#include <vector>

namespace sqglc {

// Worker cap from SQGLC_THREADS; absent or invalid means 1 (the deterministic
// default).  Only element-wise loops are parallelized; reductions stay
// sequential so results do not depend on the thread count.
inline int worker_count() {
  static const int cached = [] {
    const char* env = std::getenv("SQGLC_THREADS");
    if (env == nullptr) return 1;
    const int v = std::atoi(env);
    return v >= 1 ? v : 1;
  }();
  return cached;
}

template <typename F>
void parallel_for(int begin, int end, F&& body, int workers) {
  const int count = end - begin;
  if (workers <= 1 || count < 2 * workers) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

template <typename F>
void parallel_for(int begin, int end, F&& body) {
  parallel_for(begin, end, std::forward<F>(body), worker_count());
}

}  // namespace sqglc

#endif
