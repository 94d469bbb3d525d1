#ifndef CHIRAL_DIODE_PARALLEL_HPP
#define CHIRAL_DIODE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace chiral_diode
{

// Worker count: CHIRAL_DIODE_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_count()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CHIRAL_DIODE_THREADS"))
    {
        try
        {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(std::min<long>(v, 1024));
        }
        catch (...)
        {
        }
    }
    return hw;
}

/// Calls body(i) for i in [0, n). Each index is written by exactly one worker,
/// so results stored by index are independent of scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 256)
{
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk))));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
    {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try
            {
                for (std::size_t i = begin; i < end; ++i) body(i);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace chiral_diode

#endif // CHIRAL_DIODE_PARALLEL_HPP
