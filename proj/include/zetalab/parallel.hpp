#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace zetalab {

/// Worker count: ZETALAB_THREADS when set to a positive integer, else the hardware count.
inline unsigned worker_count() {
    if (const char* env = std::getenv("ZETALAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs task(i) for i in [0, count) on up to worker_count() threads.
/// Tasks are claimed through an atomic counter, so callers must make each task's
/// output depend on i alone. When tasks throw, the exception of the lowest failing index is rethrown,
/// which keeps error reports independent of scheduling.
template <class Task>
void parallel_for(std::size_t count, Task&& task) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{count};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            if (i > first_failure.load()) continue;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < first_failure.load()) {
                    error = std::current_exception();
                    first_failure = i;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace zetalab
