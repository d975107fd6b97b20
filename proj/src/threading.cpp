#include "modica/threading.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace modica {

namespace {
std::atomic<int> g_threads{1};
constexpr std::size_t kChunk = 4096;
}  // namespace

void set_thread_count(int k) { g_threads.store(std::max(1, k)); }

int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int k = g_threads.load();
    if (k <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = n / workers;
    const std::size_t extra = n % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t len = base + (w < extra ? 1 : 0);
        pool.emplace_back(fn, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

double chunked_reduce(std::size_t n,
                      const std::function<double(std::size_t, std::size_t)>& chunk_fn,
                      const std::function<double(double, double)>& combine,
                      double init) {
    if (n == 0) return init;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks);
    parallel_for(chunks, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            const std::size_t begin = c * kChunk;
            const std::size_t end = std::min(n, begin + kChunk);
            partial[c] = chunk_fn(begin, end);
        }
    });
    double acc = init;
    for (std::size_t c = 0; c < chunks; ++c) acc = combine(acc, partial[c]);
    return acc;
}

}  // namespace modica
