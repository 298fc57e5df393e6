// AVX2 variants of the row kernels. This translation unit is the only one
// compiled with -mavx2; callers go through the dispatch table and never reach
// these functions unless the CPU reports AVX2 at runtime.

#include "swseg/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define SWSEG_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define SWSEG_HAVE_AVX2_BUILD 0
#endif

#include <algorithm>

namespace swseg::kernels {

#if SWSEG_HAVE_AVX2_BUILD

namespace {

// Shared scaffold for windowed min/max: scalar edges, vector interior where the
// full window is in range.
template <typename VecOp, typename ScalarOp>
void window_reduce_f32(const float* src, std::size_t n, int left, int right, float* dst,
                       VecOp vop, ScalarOp sop) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    const int w = left + right;
    auto scalar_at = [&](std::ptrdiff_t i) {
        std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - left);
        std::ptrdiff_t hi = std::min<std::ptrdiff_t>(sn - 1, i + right);
        float m = src[lo];
        for (std::ptrdiff_t j = lo + 1; j <= hi; ++j) m = sop(m, src[j]);
        dst[i] = m;
    };
    std::ptrdiff_t lo_end = std::min<std::ptrdiff_t>(sn, left);
    std::ptrdiff_t hi_begin = std::max<std::ptrdiff_t>(lo_end, sn - right);
    for (std::ptrdiff_t i = 0; i < lo_end; ++i) scalar_at(i);
    std::ptrdiff_t i = lo_end;
    for (; i + 8 <= hi_begin; i += 8) {
        __m256 acc = _mm256_loadu_ps(src + i - left);
        for (int off = 1; off <= w; ++off) acc = vop(acc, _mm256_loadu_ps(src + i - left + off));
        _mm256_storeu_ps(dst + i, acc);
    }
    for (; i < hi_begin; ++i) scalar_at(i);
    for (i = hi_begin; i < sn; ++i) scalar_at(i);
}

void window_min_f32(const float* src, std::size_t n, int left, int right, float* dst) {
    window_reduce_f32(
        src, n, left, right, dst, [](__m256 a, __m256 b) { return _mm256_min_ps(a, b); },
        [](float a, float b) { return std::min(a, b); });
}

void window_max_f32(const float* src, std::size_t n, int left, int right, float* dst) {
    window_reduce_f32(
        src, n, left, right, dst, [](__m256 a, __m256 b) { return _mm256_max_ps(a, b); },
        [](float a, float b) { return std::max(a, b); });
}

void window_all_u8(const std::uint8_t* src, std::size_t n, int left, int right,
                   std::uint8_t* dst) {
    const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
    const int w = left + right;
    // Out-of-range window => background.
    std::ptrdiff_t lo_end = std::min<std::ptrdiff_t>(sn, left);
    std::ptrdiff_t hi_begin = std::max<std::ptrdiff_t>(lo_end, sn - right);
    for (std::ptrdiff_t i = 0; i < lo_end; ++i) dst[i] = 0;
    std::ptrdiff_t i = lo_end;
    for (; i + 32 <= hi_begin; i += 32) {
        __m256i acc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - left));
        for (int off = 1; off <= w; ++off) {
            acc = _mm256_and_si256(
                acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - left + off)));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), acc);
    }
    for (; i < hi_begin; ++i) {
        std::uint8_t all = 1;
        for (std::ptrdiff_t j = i - left; j <= i + right; ++j) all &= src[j];
        dst[i] = all;
    }
    for (i = hi_begin; i < sn; ++i) dst[i] = 0;
}

void acc_min_f32(float* dst, const float* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 d = _mm256_loadu_ps(dst + i);
        __m256 s = _mm256_loadu_ps(src + i);
        _mm256_storeu_ps(dst + i, _mm256_min_ps(d, s));
    }
    for (; i < n; ++i) dst[i] = std::min(dst[i], src[i]);
}

void acc_max_f32(float* dst, const float* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 d = _mm256_loadu_ps(dst + i);
        __m256 s = _mm256_loadu_ps(src + i);
        _mm256_storeu_ps(dst + i, _mm256_max_ps(d, s));
    }
    for (; i < n; ++i) dst[i] = std::max(dst[i], src[i]);
}

void acc_and_u8(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(d, s));
    }
    for (; i < n; ++i) dst[i] &= src[i];
}

void sub_f32(const float* a, const float* b, std::size_t n, float* dst) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(dst + i, _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] - b[i];
}

void mean3_f32(const float* r, const float* g, const float* b, std::size_t n, float* dst) {
    const __m256 third = _mm256_set1_ps(1.0f / 3.0f);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256 s = _mm256_add_ps(_mm256_add_ps(_mm256_loadu_ps(r + i), _mm256_loadu_ps(g + i)),
                                 _mm256_loadu_ps(b + i));
        _mm256_storeu_ps(dst + i, _mm256_mul_ps(s, third));
    }
    for (; i < n; ++i) dst[i] = (r[i] + g[i] + b[i]) * (1.0f / 3.0f);
}

std::uint64_t count_diff_i32(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
    std::uint64_t c = 0;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i eq = _mm256_cmpeq_epi32(va, vb);
        unsigned mask = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
        c += 8u - static_cast<unsigned>(__builtin_popcount(mask));
    }
    for (; i < n; ++i) c += (a[i] != b[i]) ? 1u : 0u;
    return c;
}

std::uint64_t count_nonzero_u8(const std::uint8_t* p, std::size_t n) {
    std::uint64_t c = 0;
    std::size_t i = 0;
    const __m256i zero = _mm256_setzero_si256();
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        __m256i eq = _mm256_cmpeq_epi8(v, zero);
        unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(eq));
        c += 32u - static_cast<unsigned>(__builtin_popcount(mask));
    }
    for (; i < n; ++i) c += (p[i] != 0) ? 1u : 0u;
    return c;
}

}  // namespace

const Table* avx2_table() {
    static const Table t{window_min_f32, window_max_f32, window_all_u8, acc_min_f32,
                         acc_max_f32,    acc_and_u8,     sub_f32,       mean3_f32,
                         count_diff_i32, count_nonzero_u8, "avx2"};
    return &t;
}

#else

const Table* avx2_table() { return nullptr; }

#endif  // SWSEG_HAVE_AVX2_BUILD

}  // namespace swseg::kernels
