#pragma once

#include <cstddef>
#include <functional>

namespace slitpath {

/// Number of worker threads used by the data-parallel kernels. Results never
/// depend on this value: every output element is produced by one worker with
/// a fixed accumulation order.
void set_worker_count(std::size_t n);
std::size_t worker_count() noexcept;

/// Runs body(begin, end) over contiguous chunks of [0, n).
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace slitpath
