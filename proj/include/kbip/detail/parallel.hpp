#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace kbip::detail {

// Resolves a requested worker count: 0 (or negative) means "use the
// KBIP_THREADS environment variable, else hardware concurrency".
inline int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("KBIP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over contiguous chunks of [0, count).
// fn must not throw; record failures in shared data instead.
template <typename Fn>
void parallel_chunks(long long count, int threads, Fn&& fn) {
    if (count <= 0)
        return;
    const long long workers =
        std::min<long long>(resolve_threads(threads), count);
    if (workers <= 1) {
        fn(static_cast<long long>(0), count);
        return;
    }
    const long long chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long long w = 0; w < workers; ++w) {
        const long long begin = w * chunk;
        const long long end = std::min(count, begin + chunk);
        if (begin >= end)
            break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace kbip::detail
