#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace swseg {

// Error taxonomy mirrored by the CLI exit codes: config 1, data 2, degenerate 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct DegenerateMeasureError : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};

/// splitmix64; used to derive independent per-trial RNG streams from (seed, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Small counter-based generator. Deterministic across platforms, cheap to seed,
/// and every (seed, stream) pair yields an independent sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(splitmix64(seed ^ (0x632be59bd9b4e019ull * (stream + 1)))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection-free modulo is fine here: n is tiny relative to 2^64.
        return next_u64() % n;
    }

    /// Knuth-style Poisson sample, chunked so exp() never underflows.
    std::uint64_t next_poisson(double mean);

private:
    std::uint64_t state_;
};

/// FNV-1a over bytes; used for cache keys.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a(s.data(), s.size(), h);
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Exceptions are
/// captured and rethrown on the calling thread. Results must be written to
/// per-index slots so the outcome is independent of scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

inline int default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string format_double(double v);  // shortest round-trip text, stable across runs

}  // namespace swseg
