#pragma once

#include <cstddef>
#include <cstdint>

// Row-oriented inner loops shared by the morphology and scoring code. Every
// entry point has a scalar reference implementation and may have a SIMD
// variant; the active table is chosen once at startup from CPU capabilities
// (override with SWSEG_KERNELS=scalar). All variants are bit-exact equals of
// the scalar reference, which the kernel tests enforce.

namespace swseg::kernels {

struct Table {
    // dst[i] = min/max of src[clamp(i-left, 0, n-1) .. clamp(i+right)]: window
    // clipped at the row ends (image-border convention for grayscale morphology).
    void (*window_min_f32)(const float* src, std::size_t n, int left, int right, float* dst);
    void (*window_max_f32)(const float* src, std::size_t n, int left, int right, float* dst);
    // dst[i] = 1 iff src[i-left .. i+right] are all 1 *and* the window lies
    // inside [0, n): out-of-range counts as background.
    void (*window_all_u8)(const std::uint8_t* src, std::size_t n, int left, int right,
                          std::uint8_t* dst);
    // dst[i] = op(dst[i], src[i]) accumulators for 2-D structuring-element sweeps.
    void (*acc_min_f32)(float* dst, const float* src, std::size_t n);
    void (*acc_max_f32)(float* dst, const float* src, std::size_t n);
    void (*acc_and_u8)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
    // dst[i] = a[i] - b[i] (dilation minus erosion).
    void (*sub_f32)(const float* a, const float* b, std::size_t n, float* dst);
    // dst[i] = (r[i] + g[i] + b[i]) / 3.
    void (*mean3_f32)(const float* r, const float* g, const float* b, std::size_t n, float* dst);
    std::uint64_t (*count_diff_i32)(const std::int32_t* a, const std::int32_t* b, std::size_t n);
    std::uint64_t (*count_nonzero_u8)(const std::uint8_t* p, std::size_t n);
    const char* name;
};

const Table& scalar_table();
const Table* avx2_table();  // nullptr when unsupported on this CPU/build

/// Selected-at-startup table used by the library.
const Table& active();

}  // namespace swseg::kernels
