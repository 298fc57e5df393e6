#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "swseg/common.hpp"

namespace swseg {

/// Intensity image, planar channel layout, values normalized to [0,1].
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 or 3
    std::vector<float> data;  // channels * width * height, channel-major

    Image() = default;
    Image(int w, int h, int c, float fill = 0.0f)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, fill) {
        if (w < 1 || h < 1 || (c != 1 && c != 3)) throw DataError("bad image dimensions");
    }

    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
    const float* plane(int c) const { return data.data() + pixels() * c; }
    float* plane(int c) { return data.data() + pixels() * c; }
    float at(int c, int x, int y) const {
        return data[pixels() * c + static_cast<std::size_t>(y) * width + x];
    }
    float& at(int c, int x, int y) {
        return data[pixels() * c + static_cast<std::size_t>(y) * width + x];
    }
};

/// Non-negative per-pixel field (the relief flooded by the watershed).
struct ScalarField {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    ScalarField() = default;
    ScalarField(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw DataError("bad field dimensions");
    }

    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
    float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Per-pixel region ids of a fine partition. Labels are contiguous from 0 and
/// every region is 4-connected; normalize_labels() establishes both.
struct LabelMap {
    int width = 0;
    int height = 0;
    int n_regions = 0;
    std::vector<std::int32_t> labels;

    LabelMap() = default;
    LabelMap(int w, int h)
        : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {
        if (w < 1 || h < 1) throw DataError("bad label map dimensions");
    }

    std::size_t pixels() const { return static_cast<std::size_t>(width) * height; }
    std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
    std::int32_t& at(int x, int y) { return labels[static_cast<std::size_t>(y) * width + x]; }
};

/// Flat structuring elements centered at the origin. Segment centers sit at
/// offset floor(n/2) from the left/top end.
struct StructuringElement {
    enum class Shape { Disk, HSeg, VSeg };

    Shape shape = Shape::Disk;
    int size = 0;  // radius for Disk, length for segments

    static StructuringElement disk(int radius) {
        if (radius < 0) throw ConfigError("disk radius must be >= 0");
        return {Shape::Disk, radius};
    }
    static StructuringElement hseg(int length) {
        if (length < 1) throw ConfigError("segment length must be >= 1");
        return {Shape::HSeg, length};
    }
    static StructuringElement vseg(int length) {
        if (length < 1) throw ConfigError("segment length must be >= 1");
        return {Shape::VSeg, length};
    }

    /// Pixel offsets (dx, dy) covered by the element; always contains (0, 0).
    std::vector<std::pair<int, int>> offsets() const;

    std::string name() const;              // e.g. "disk:4"
    static StructuringElement parse(const std::string& text);

    bool operator==(const StructuringElement&) const = default;
};

/// Relabels to a contiguous range starting at 0 and splits labels that are not
/// 4-connected into their connected components. New ids follow row-major
/// first-occurrence order, so the result is deterministic.
LabelMap normalize_labels(const LabelMap& raw);

}  // namespace swseg
