#pragma once

#include "swseg/hierarchy.hpp"

namespace swseg {

/// Inter-pixel contour image on the doubled (2w+1) x (2h+1) grid. Pixel cells
/// stay 0; each boundary element between two fine regions carries the altitude
/// at which they merge, junction points the max of their incident boundaries.
/// Thresholding at λ draws exactly the contours of cut_at(λ).
struct SaliencyImage {
    int width = 0;    // 2 * image width + 1
    int height = 0;   // 2 * image height + 1
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

SaliencyImage render_saliency(const IndexedHierarchy& h, const LabelMap& fine);

/// 16-bit PNG after affine scaling, with the scale factor recorded in a
/// sidecar text file `<path>.scale.txt`.
void write_saliency_png(const std::string& path, const SaliencyImage& saliency);

}  // namespace swseg
