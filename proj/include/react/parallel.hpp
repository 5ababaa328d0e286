#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace react {

// Runs task(k) for k in [0, count) on a static partition of worker threads.
// Each task must write only to its own output slot; the results are then
// independent of the thread count.
// Worker count: REACT_THREADS when set to a positive integer, else the
// hardware concurrency.
inline std::size_t worker_threads() {
    if (const char* env = std::getenv("REACT_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<std::size_t>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <class Task>
void parallel_for(std::size_t count, Task&& task) {
    const std::size_t workers = std::min<std::size_t>(count, worker_threads());
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) task(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < count; k += workers) task(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace react
