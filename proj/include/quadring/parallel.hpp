#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace quadring {

/// Runs body(begin, end) over `threads` contiguous chunks of [0, n) and joins.
/// The first exception thrown by any chunk is rethrown.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t step = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(n, t * step);
        const std::size_t end = std::min(n, begin + step);
        pool.emplace_back([&, t, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Sum of count(begin, end) over chunks; equal to the sequential sum.
template <class Count>
std::uint64_t parallel_sum(std::size_t n, unsigned threads, Count&& count) {
    threads = std::max(1U, threads);
    std::vector<std::uint64_t> partial(threads, 0);
    const std::size_t step = (n + threads - 1) / threads;
    parallel_chunks(threads, threads, [&](std::size_t first, std::size_t last) {
        for (std::size_t t = first; t < last; ++t) {
            const std::size_t begin = std::min(n, t * step);
            partial[t] = count(begin, std::min(n, begin + step));
        }
    });
    std::uint64_t total = 0;
    for (auto x : partial) total += x;
    return total;
}

} // namespace quadring
