#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace stabest {

// Static-partition parallel loop. Work item i must write only to its own
// output slot; with per-item random streams the results are then identical
// for every thread count.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace stabest
