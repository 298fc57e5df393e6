#pragma once

#include <cstdint>
#include <vector>

#include "swseg/image.hpp"

namespace swseg {

/// Binary mask with byte-per-pixel storage (0 background, 1 foreground).
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    Mask() = default;
    Mask(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw DataError("bad mask dimensions");
    }
    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Luminance plane: the image itself for 1-channel input, the unweighted
/// channel mean for 3-channel input.
ScalarField luminance(const Image& img);

/// Per-pixel dilation minus erosion of the luminance by a disk of the given
/// radius. The disk is clipped at image borders.
ScalarField morphological_gradient(const Image& img, int radius = 1);

/// Erosion: out(p) = 1 iff the element centered at p fits entirely inside the
/// mask; positions where the element leaves the image count as background.
/// Row/column sweep implementation on top of the windowed-AND kernels.
Mask erode_sweep(const Mask& mask, const StructuringElement& se);

/// Same contract via squared distance transform (disks) or running foreground
/// counts (segments). Preferred route for large elements.
Mask erode(const Mask& mask, const StructuringElement& se);

/// Number of pixels where the element fits entirely inside the mask.
std::uint64_t eroded_area(const Mask& mask, const StructuringElement& se);

std::uint64_t area(const Mask& mask);

/// Squared Euclidean distance to the nearest background pixel; everything
/// outside the image counts as background. Foreground-free images are all 0.
std::vector<std::int32_t> squared_distance_transform(const Mask& mask);

}  // namespace swseg
