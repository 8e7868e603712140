#ifndef ARRLAB_THREADS_HPP
#define ARRLAB_THREADS_HPP

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace arrlab {

// Parallelism cap: ARRLAB_THREADS (0 = serial), default hardware concurrency.
inline long thread_limit() {
    if (const char* env = std::getenv("ARRLAB_THREADS")) {
        long v = std::atol(env);
        return v <= 0 ? 1 : v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (long)hw;
}

// Run fn(item) over all items on up to thread_limit() threads. Exceptions are
// collected and the first one is rethrown after all workers join.
template <class F>
void parallel_over(const std::vector<long>& items, F fn) {
    long t = std::min<long>(thread_limit(), (long)items.size());
    if (t <= 1) {
        for (long it : items) fn(it);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            try {
                fn(items[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (long i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace arrlab

#endif
