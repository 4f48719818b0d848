#include "ecgf/common.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace ecgf {

namespace {
std::atomic<int> g_default_jobs{0};
}

void set_default_jobs(int jobs) { g_default_jobs.store(jobs > 0 ? jobs : 0); }

int default_jobs() { return g_default_jobs.load(); }

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 0) jobs = g_default_jobs.load();
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : (hw ? hw : 1u);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load(std::memory_order_relaxed)) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ecgf
