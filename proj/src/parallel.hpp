#pragma once
// Deterministic fork-join helper: splits [0, n) into contiguous chunks, one
// worker thread per chunk. Callers must write only to disjoint output slots,
// so results are identical for any thread count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace smartmtd {

template <typename Fn>
void parallel_for(size_t n, int threads, Fn&& body) {
    if (n == 0) return;
    const size_t workers = std::min<size_t>(std::max(threads, 1), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const size_t chunk = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t begin = w * chunk;
        const size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                for (size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

} // namespace smartmtd
