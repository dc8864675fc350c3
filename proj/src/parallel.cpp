#include "fpls/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fpls {

int worker_count() {
    static const int cached = [] {
        if (const char* env = std::getenv("FPLS_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) return v;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return cached;
}

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nw = worker_count();
    if (nw <= 1 || count < 2) {
        fn(0, count);
        return;
    }
    // Fixed chunk layout independent of worker count keeps results bitwise
    // stable; workers just pick up chunks.
    const std::size_t chunks = std::min<std::size_t>(count, static_cast<std::size_t>(nw));
    const std::size_t base = count / chunks, rem = count % chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks - 1);
    std::size_t begin = 0;
    for (std::size_t k = 0; k < chunks; ++k) {
        const std::size_t len = base + (k < rem ? 1 : 0);
        const std::size_t end = begin + len;
        if (k + 1 == chunks)
            fn(begin, end);
        else
            pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

} // namespace fpls
