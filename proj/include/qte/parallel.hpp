#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qte {

// Number of worker threads (env QTE_THREADS, default hardware concurrency).
int worker_threads();

// Runs f(i) for i in [0, n) on the worker pool. Order is unspecified; f must
// only write to disjoint state per index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

// Sum of f(i) over [0, n). Partial sums are accumulated over a fixed chunk
// grid and reduced in chunk order, so the result does not depend on the
// thread count.
double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& f);

// As parallel_sum but f accumulates a vector contribution per index into a
// chunk-local buffer; the per-chunk buffers are reduced in chunk order.
void parallel_accumulate(std::size_t n, std::size_t width,
                         const std::function<void(std::size_t, std::vector<double>&)>& f,
                         std::vector<double>& out);

} // namespace qte
