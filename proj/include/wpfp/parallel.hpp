#pragma once

#include <cstddef>
#include <functional>

namespace wpfp {

// Data-parallel width: min(WPFP_THREADS, hardware concurrency), at least 1.
// WPFP_THREADS is read once on first use.
std::size_t worker_count();

// Runs f(begin, end) on disjoint index ranges covering [0, n).
// Partitioning is static, so results of disjoint-range writes are
// deterministic. Falls back to a serial call when n is small or the
// width is 1. Do not nest.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f);

} // namespace wpfp
