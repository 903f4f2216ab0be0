#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace hermsim {

/// Number of workers the process-wide pool can supply.
int max_workers();

/// Runs fn(unit) for every unit in [0, n_units). With threads <= 1 the
/// loop runs inline on the caller; otherwise units are split into
/// contiguous chunks across the pool. Callers guarantee disjoint write
/// sets per unit, so any schedule yields bit-identical results.
void parallel_for(std::uint64_t n_units, int threads, const std::function<void(std::uint64_t)>& fn);

/// Chunked variant: fn(begin, end) per contiguous range, for kernels that
/// want tight inner loops without a per-unit std::function call.
void parallel_for_ranges(std::uint64_t n_units, int threads,
                         const std::function<void(std::uint64_t, std::uint64_t)>& fn);

} // namespace hermsim
