#include "qcl/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace qcl {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void parallel_for(std::size_t count, int n_threads, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  int workers = n_threads;
  if (workers < 1) workers = 1;
  if (static_cast<std::size_t>(workers) > count) workers = static_cast<int>(count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

double sinc(double x) {
  double ax = std::abs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace qcl
