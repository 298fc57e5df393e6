#include "swseg/common.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>

namespace swseg {

std::uint64_t Rng::next_poisson(double mean) {
    if (!(mean >= 0.0)) throw InternalError("poisson mean must be non-negative");
    std::uint64_t total = 0;
    // exp(-500) ~ 7e-218, comfortably above double underflow.
    while (mean > 500.0) {
        total += next_poisson(500.0);
        mean -= 500.0;
    }
    const double limit = std::exp(-mean);
    double prod = next_double();
    std::uint64_t k = 0;
    while (prod > limit) {
        ++k;
        prod *= next_double();
    }
    return total + k;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers < 1) workers = 1;
    if (n == 0) return;
    if (workers == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string format_double(double v) {
    char buf[64];
    if (v == static_cast<double>(static_cast<long long>(v)) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest representation that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char candidate[64];
        std::snprintf(candidate, sizeof(candidate), "%.*g", prec, v);
        double back = std::strtod(candidate, nullptr);
        if (back == v) return candidate;
    }
    return buf;
}

}  // namespace swseg
