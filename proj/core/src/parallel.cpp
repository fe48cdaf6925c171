#include "heatlab/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace heatlab {

void parallel_for_blocks(
    std::size_t n, int threads,
    const std::function<void(std::size_t, std::size_t, int)>& fn) {
  if (n == 0) return;
  const int nblocks =
      std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (nblocks == 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nblocks);
  const std::size_t chunk = (n + nblocks - 1) / nblocks;
  for (int b = 0; b < nblocks; ++b) {
    const std::size_t begin = b * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, b] { fn(begin, end, b); });
  }
  for (auto& t : pool) t.join();
}

int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hc, 1u, 16u));
}

}  // namespace heatlab
