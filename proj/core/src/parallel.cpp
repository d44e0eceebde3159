#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <gifnet/parallel.hpp>

namespace gifnet {

std::size_t worker_count(std::size_t requested) {
    std::size_t n = requested? requested: std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GIFNET_THREADS")) {
        try {
            long cap = std::stol(env);
            if (cap >= 1) n = std::min<std::size_t>(n, std::size_t(cap));
        }
        catch (...) {}
    }
    return std::max<std::size_t>(n, 1);
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body) {
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            }
            catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (auto& t: pool) t.join();
    if (first) std::rethrow_exception(first);
}

} // namespace gifnet
