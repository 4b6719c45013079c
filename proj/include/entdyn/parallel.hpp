#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace entdyn {

// Runs f(i) for i in [0, n) over `jobs` threads on contiguous index chunks.
// Results must be written to preallocated, index-addressed storage so the
// output is identical to serial evaluation for any worker count.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  if (jobs > n) jobs = static_cast<unsigned>(n);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &f] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : workers) t.join();
}

} // namespace entdyn
