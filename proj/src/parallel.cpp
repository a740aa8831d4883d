#include "wpfp/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace wpfp {

std::size_t worker_count() {
  static const std::size_t count = [] {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("WPFP_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
    }
    return hw;
  }();
  return count;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f) {
  const std::size_t width = worker_count();
  if (n == 0) return;
  if (width == 1 || n < 2 * width) {
    f(0, n);
    return;
  }
  const std::size_t chunk = (n + width - 1) / width;
  std::vector<std::thread> threads;
  threads.reserve(width - 1);
  for (std::size_t w = 1; w < width; ++w) {
    const std::size_t lo = std::min(n, w * chunk);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo < hi) threads.emplace_back(f, lo, hi);
  }
  f(0, std::min(n, chunk));
  for (auto& t : threads) t.join();
}

} // namespace wpfp
