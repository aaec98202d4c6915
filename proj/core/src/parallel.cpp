#include "weylscope/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace weylscope {

int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t units, int workers, const std::function<void(std::size_t)>& fn) {
    if (units == 0) return;
    if (workers < 1) workers = 1;
    auto w = static_cast<std::size_t>(workers);
    if (w > units) w = units;
    if (w == 1) {
        for (std::size_t u = 0; u < units; ++u) fn(u);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    // chunked self-scheduling; result placement is by unit index, so the
    // nondeterministic schedule never shows up in outputs
    std::size_t chunk = std::max<std::size_t>(1, units / (w * 8));

    auto body = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= units) break;
            std::size_t end = std::min(units, begin + chunk);
            try {
                for (std::size_t u = begin; u < end; ++u) fn(u);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (failed && error) std::rethrow_exception(error);
}

} // namespace weylscope
