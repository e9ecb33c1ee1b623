#pragma once

#include <cstdint>
#include <functional>

namespace snapcap::par {

/// Number of OpenMP threads the kernels will use. Defaults to the hardware
/// concurrency; set to 1 for single-threaded runs.
int threads();
void set_threads(int n);

/// Deterministic sum of f(i) for i in [0, n). Partial sums are accumulated
/// over a fixed chunk grid and combined in chunk order, so the result is
/// bitwise identical for any thread count.
double sum_chunked(int64_t n, const std::function<double(int64_t)>& f);

/// Same determinism contract for a raw array.
double sum_array(const double* a, int64_t n);

} // namespace snapcap::par
