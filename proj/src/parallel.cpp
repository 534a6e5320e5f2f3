#include "grasslab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace grasslab {

unsigned thread_count() {
    if (const char* env = std::getenv("GRASSLAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1u;
}

unsigned block_count(std::size_t n) {
    if (n == 0) return 0;
    // Fixed decomposition independent of the worker count, so per-block
    // results (and any ordered merge of them) are reproducible.
    return static_cast<unsigned>(n < 64 ? n : 64);
}

void parallel_blocks(std::size_t n,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
    const unsigned blocks = block_count(n);
    if (blocks == 0) return;
    const unsigned workers = std::min<unsigned>(thread_count(), blocks);
    if (workers <= 1) {
        for (unsigned b = 0; b < blocks; ++b)
            fn(b, n * b / blocks, n * (b + 1) / blocks);
        return;
    }
    std::atomic<unsigned> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                unsigned b = next.fetch_add(1);
                if (b >= blocks) return;
                fn(b, n * b / blocks, n * (b + 1) / blocks);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace grasslab
