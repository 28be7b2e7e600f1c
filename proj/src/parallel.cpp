#include "qte/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace qte {

namespace {

constexpr std::size_t kChunks = 64;
constexpr std::size_t kSerialCutoff = 32;
// accumulation batches carry whole-gradient work per index, so even tiny
// batches are worth the thread spawn
constexpr std::size_t kAccumulateCutoff = 2;

std::size_t chunk_begin(std::size_t n, std::size_t c) { return n * c / kChunks; }

int detect_threads() {
    if (const char* env = std::getenv("QTE_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename ChunkFn>
void run_chunked(std::size_t n, std::size_t cutoff, const ChunkFn& chunk_fn) {
    int nthreads = worker_threads();
    if (n <= cutoff || nthreads <= 1) {
        for (std::size_t c = 0; c < kChunks; ++c) chunk_fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= kChunks) return;
            chunk_fn(c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads) - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace

int worker_threads() {
    static int n = detect_threads();
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f) {
    run_chunked(n, kSerialCutoff, [&](std::size_t c) {
        for (std::size_t i = chunk_begin(n, c); i < chunk_begin(n, c + 1); ++i) f(i);
    });
}

double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
    std::vector<double> partial(kChunks, 0.0);
    run_chunked(n, kSerialCutoff, [&](std::size_t c) {
        double acc = 0.0;
        for (std::size_t i = chunk_begin(n, c); i < chunk_begin(n, c + 1); ++i) acc += f(i);
        partial[c] = acc;
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

void parallel_accumulate(std::size_t n, std::size_t width,
                         const std::function<void(std::size_t, std::vector<double>&)>& f,
                         std::vector<double>& out) {
    std::vector<std::vector<double>> partial(kChunks);
    run_chunked(n, kAccumulateCutoff, [&](std::size_t c) {
        std::size_t b = chunk_begin(n, c), e = chunk_begin(n, c + 1);
        if (b == e) return;
        partial[c].assign(width, 0.0);
        for (std::size_t i = b; i < e; ++i) f(i, partial[c]);
    });
    out.assign(width, 0.0);
    for (const auto& p : partial) {
        if (p.empty()) continue;
        for (std::size_t j = 0; j < width; ++j) out[j] += p[j];
    }
}

} // namespace qte
