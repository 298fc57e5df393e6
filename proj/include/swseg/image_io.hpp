#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swseg/image.hpp"

namespace swseg {

/// Reads an 8/16-bit PNG or PGM/PPM image; values normalized to [0,1] by the
/// format's maximum. Alpha is dropped, palettes expanded.
Image read_image(const std::string& path);

/// Reads raw integer samples from a single-channel PNG (8/16-bit) or PGM.
LabelMap read_label_image(const std::string& path);

/// read_label_image + contiguous relabeling + connected-component splitting.
/// When expect_width/height are >= 0, dimensions must match the companion image.
LabelMap import_labels(const std::string& path, int expect_width = -1, int expect_height = -1);

/// 16-bit single-channel PNG of region ids. Fails beyond 65535 regions.
void write_label_png16(const std::string& path, const LabelMap& labels);

/// 16-bit grayscale PNG from raw samples.
void write_png16_gray(const std::string& path, const std::vector<std::uint16_t>& samples,
                      int width, int height);

/// 16-bit PNG (grayscale or RGB) from a normalized image.
void write_image_png16(const std::string& path, const Image& img);

}  // namespace swseg
