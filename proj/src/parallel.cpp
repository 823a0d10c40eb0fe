#include "modlie/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace modlie {

unsigned worker_count() {
    static const unsigned cached = [] {
        unsigned n = 0;
        if (const char* env = std::getenv("MODLIE_THREADS")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0')
                n = static_cast<unsigned>(std::min(v, 64ul));
        }
        if (n == 0) {
            n = std::thread::hardware_concurrency();
            if (n == 0)
                n = 1;
            n = std::min(n, 64u);
        }
        return n;
    }();
    return cached;
}

void parallel_ranges(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1 || n == 0) {
        fn(0, n, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace modlie
