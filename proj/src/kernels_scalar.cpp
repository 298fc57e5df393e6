#include "swseg/kernels.hpp"

#include <algorithm>

namespace swseg::kernels {
namespace {

void window_min_f32(const float* src, std::size_t n, int left, int right, float* dst) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - left);
        std::ptrdiff_t hi = std::min<std::ptrdiff_t>(sn - 1, i + right);
        float m = src[lo];
        for (std::ptrdiff_t j = lo + 1; j <= hi; ++j) m = std::min(m, src[j]);
        dst[i] = m;
    }
}

void window_max_f32(const float* src, std::size_t n, int left, int right, float* dst) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - left);
        std::ptrdiff_t hi = std::min<std::ptrdiff_t>(sn - 1, i + right);
        float m = src[lo];
        for (std::ptrdiff_t j = lo + 1; j <= hi; ++j) m = std::max(m, src[j]);
        dst[i] = m;
    }
}

void window_all_u8(const std::uint8_t* src, std::size_t n, int left, int right,
                   std::uint8_t* dst) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
        if (i - left < 0 || i + right >= sn) {
            dst[i] = 0;
            continue;
        }
        std::uint8_t all = 1;
        for (std::ptrdiff_t j = i - left; j <= i + right; ++j) all &= src[j];
        dst[i] = all;
    }
}

void acc_min_f32(float* dst, const float* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::min(dst[i], src[i]);
}

void acc_max_f32(float* dst, const float* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::max(dst[i], src[i]);
}

void acc_and_u8(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

void sub_f32(const float* a, const float* b, std::size_t n, float* dst) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}

void mean3_f32(const float* r, const float* g, const float* b, std::size_t n, float* dst) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = (r[i] + g[i] + b[i]) * (1.0f / 3.0f);
}

std::uint64_t count_diff_i32(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (a[i] != b[i]) ? 1u : 0u;
    return c;
}

std::uint64_t count_nonzero_u8(const std::uint8_t* p, std::size_t n) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (p[i] != 0) ? 1u : 0u;
    return c;
}

}  // namespace

const Table& scalar_table() {
    static const Table t{window_min_f32, window_max_f32, window_all_u8, acc_min_f32,
                         acc_max_f32,    acc_and_u8,     sub_f32,       mean3_f32,
                         count_diff_i32, count_nonzero_u8, "scalar"};
    return t;
}

}  // namespace swseg::kernels
