#ifndef SL2GID_PARALLEL_HPP
#define SL2GID_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sl2gid {

/// Worker count from SL2GID_JOBS, or 1.
inline unsigned default_jobs()
{
    if (const char *env = std::getenv("SL2GID_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(std::min(v, 256L));
        }
    }
    return 1;
}

/// Splits [0, n) into contiguous blocks and runs fn(begin, end, block) on
/// each, one thread per block. The first exception thrown is rethrown.
template <class Fn>
void parallel_blocks(std::uint64_t n, unsigned jobs, Fn &&fn)
{
    jobs = std::max(1U, jobs);
    if (jobs == 1 || n < 2 * static_cast<std::uint64_t>(jobs)) {
        fn(std::uint64_t{0}, n, 0U);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    const std::uint64_t chunk = (n + jobs - 1) / jobs;
    for (unsigned t = 0; t < jobs; ++t) {
        const std::uint64_t b = std::min(n, t * chunk), e = std::min(n, b + chunk);
        pool.emplace_back([&, b, e, t] {
            try {
                fn(b, e, t);
            } catch (...) {
                std::lock_guard lock(m);
                if (!err) {
                    err = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (err) {
        std::rethrow_exception(err);
    }
}

} // namespace sl2gid

#endif
