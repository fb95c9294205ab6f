#include "wdmsim/threading.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wdmsim {

void parallel_for(std::size_t count, int n_threads, const std::function<void(std::size_t)>& fn)
{
    if (count == 0)
        return;
    const std::size_t workers =
        std::min<std::size_t>(count, n_threads > 1 ? static_cast<std::size_t>(n_threads) : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();

    if (error)
        std::rethrow_exception(error);
}

} // namespace wdmsim
