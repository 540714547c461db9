#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace heislat {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Evaluates fn(i) for i in [0, n) in parallel, writing results by trial
/// index. fn must derive all randomness from the index, so the output is
/// independent of the worker count and schedule.
template <class Fn>
auto run_trials(long long n, int threads, Fn&& fn) {
    using Value = std::decay_t<decltype(fn(0LL))>;
    std::vector<Value> out(static_cast<std::size_t>(n));
    const int workers = std::min<long long>(resolve_threads(threads), n);
    if (workers <= 1) {
        for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        const long long lo = n * w / workers;
        const long long hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try {
                for (long long i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace heislat
