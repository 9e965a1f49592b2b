#include "zetares/jobs.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zr {

namespace {
std::atomic<int> g_cap{0};
}

int max_threads() {
    int cap = g_cap.load();
    if (cap <= 0) {
        if (const char* env = std::getenv("ZETARES_THREADS")) {
            cap = std::atoi(env);
        }
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (cap <= 0 || cap > hw) cap = hw;
    return cap;
}

void set_thread_cap(int n) { g_cap.store(n); }

void parallel_chunks(std::size_t nchunks, const std::function<void(std::size_t)>& fn) {
    if (nchunks == 0) return;
    int workers = max_threads();
    if (workers <= 1 || nchunks == 1) {
        for (std::size_t i = 0; i < nchunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mtx;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= nchunks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mtx);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::size_t>(workers, nchunks);
    pool.reserve(n - 1);
    for (int i = 0; i < n - 1; ++i) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace zr
