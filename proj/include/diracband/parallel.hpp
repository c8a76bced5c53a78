#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace diracband::detail {

/// out[i] = f(in[i]), split into contiguous chunks over hardware threads.
/// Results are written by index, so the output does not depend on scheduling.
/// The first exception raised by any chunk is rethrown.
template <class F>
std::vector<double> parallel_map(const std::vector<double> &in, F f, std::size_t serial_below = 64)
{
    std::vector<double> out(in.size());
    const std::size_t n = in.size();
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (n < serial_below || hw == 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f(in[i]);
        return out;
    }

    const std::size_t workers = std::min(hw, n);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                const std::size_t lo = w * chunk;
                const std::size_t hi = std::min(n, lo + chunk);
                try {
                    for (std::size_t i = lo; i < hi; ++i)
                        out[i] = f(in[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace diracband::detail
