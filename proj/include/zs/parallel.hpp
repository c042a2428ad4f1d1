#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace zs {

// Worker count: hardware concurrency capped by the ZS_THREADS environment variable.
inline int worker_count()
{
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0)
        n = 1;
    if (const char* env = std::getenv("ZS_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1 && cap < n)
            n = cap;
    }
    return n;
}

// Run fn(i) for i in [0, count) across workers.  Each index is handled exactly once;
// callers write to disjoint slots, so the result is deterministic.  The first
// exception thrown by any worker is rethrown on the calling thread.
inline void parallel_for(int count, const std::function<void(int)>& fn)
{
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count && !failed.load(); i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err)
                        err = std::current_exception();
                    failed.store(true);
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

}  // namespace zs
