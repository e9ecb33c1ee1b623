#include "snapcap/parallel.hpp"

#include <algorithm>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace snapcap::par {

namespace {
int g_threads = []() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}();
} // namespace

int threads() { return g_threads; }

void set_threads(int n) {
    g_threads = std::max(1, n);
#ifdef _OPENMP
    omp_set_num_threads(g_threads);
#endif
}

// Fixed chunk count: the partial-sum grid must not depend on the thread
// count or results would change between serial and parallel runs.
constexpr int kChunks = 64;

double sum_chunked(int64_t n, const std::function<double(int64_t)>& f) {
    if (n <= 0) return 0.0;
    double partial[kChunks] = {};
    const int64_t step = (n + kChunks - 1) / kChunks;
#pragma omp parallel for schedule(static) num_threads(g_threads)
    for (int c = 0; c < kChunks; ++c) {
        const int64_t lo = int64_t(c) * step;
        const int64_t hi = std::min(n, lo + step);
        double acc = 0.0;
        for (int64_t i = lo; i < hi; ++i) acc += f(i);
        partial[c] = acc;
    }
    double total = 0.0;
    for (int c = 0; c < kChunks; ++c) total += partial[c];
    return total;
}

double sum_array(const double* a, int64_t n) {
    if (n <= 0) return 0.0;
    double partial[kChunks] = {};
    const int64_t step = (n + kChunks - 1) / kChunks;
#pragma omp parallel for schedule(static) num_threads(g_threads)
    for (int c = 0; c < kChunks; ++c) {
        const int64_t lo = int64_t(c) * step;
        const int64_t hi = std::min(n, lo + step);
        double acc = 0.0;
        for (int64_t i = lo; i < hi; ++i) acc += a[i];
        partial[c] = acc;
    }
    double total = 0.0;
    for (int c = 0; c < kChunks; ++c) total += partial[c];
    return total;
}

} // namespace snapcap::par
