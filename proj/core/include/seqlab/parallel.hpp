#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace seqlab {

// Clamps a requested worker count (0 = hardware concurrency) to [1, 64].
int effective_workers(int requested);

// Runs fn(0..n-1) across `workers` threads and collects the results by job
// index, so the output is identical for every worker count.
template <typename R>
std::vector<R> parallel_map(std::size_t n, int workers,
                            const std::function<R(std::size_t)>& fn) {
    std::vector<R> results(n);
    int w = effective_workers(workers);
    if (w <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    for (int t = 0; t < w; ++t) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

}  // namespace seqlab
