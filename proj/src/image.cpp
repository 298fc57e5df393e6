#include "swseg/image.hpp"

#include <cstdio>
#include <queue>

namespace swseg {

std::vector<std::pair<int, int>> StructuringElement::offsets() const {
    std::vector<std::pair<int, int>> out;
    switch (shape) {
        case Shape::Disk: {
            const int r = size;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    if (dx * dx + dy * dy <= r * r) out.emplace_back(dx, dy);
            break;
        }
        case Shape::HSeg: {
            const int c = size / 2;
            for (int dx = -c; dx < size - c; ++dx) out.emplace_back(dx, 0);
            break;
        }
        case Shape::VSeg: {
            const int c = size / 2;
            for (int dy = -c; dy < size - c; ++dy) out.emplace_back(0, dy);
            break;
        }
    }
    return out;
}

std::string StructuringElement::name() const {
    const char* tag = shape == Shape::Disk ? "disk" : (shape == Shape::HSeg ? "hseg" : "vseg");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s:%d", tag, size);
    return buf;
}

StructuringElement StructuringElement::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("bad structuring element '" + text + "'");
    std::string kind = text.substr(0, colon);
    int value = 0;
    try {
        std::size_t used = 0;
        value = std::stoi(text.substr(colon + 1), &used);
        if (colon + 1 + used != text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("bad structuring element size in '" + text + "'");
    }
    if (kind == "disk") return disk(value);
    if (kind == "hseg") return hseg(value);
    if (kind == "vseg") return vseg(value);
    throw ConfigError("unknown structuring element shape '" + kind + "'");
}

LabelMap normalize_labels(const LabelMap& raw) {
    const int w = raw.width;
    const int h = raw.height;
    if (w < 1 || h < 1) throw DataError("empty label map");
    LabelMap out(w, h);
    std::fill(out.labels.begin(), out.labels.end(), -1);

    // Flood each connected component of equal input label; ids in scan order.
    std::int32_t next = 0;
    std::vector<std::int32_t> stack;
    for (std::size_t start = 0; start < raw.pixels(); ++start) {
        if (out.labels[start] != -1) continue;
        const std::int32_t value = raw.labels[start];
        const std::int32_t id = next++;
        stack.push_back(static_cast<std::int32_t>(start));
        out.labels[start] = id;
        while (!stack.empty()) {
            const std::int32_t p = stack.back();
            stack.pop_back();
            const int x = p % w;
            const int y = p / w;
            const int nx[4] = {x, x - 1, x + 1, x};
            const int ny[4] = {y - 1, y, y, y + 1};
            for (int k = 0; k < 4; ++k) {
                if (nx[k] < 0 || nx[k] >= w || ny[k] < 0 || ny[k] >= h) continue;
                const std::size_t q = static_cast<std::size_t>(ny[k]) * w + nx[k];
                if (out.labels[q] == -1 && raw.labels[q] == value) {
                    out.labels[q] = id;
                    stack.push_back(static_cast<std::int32_t>(q));
                }
            }
        }
    }
    out.n_regions = next;
    return out;
}

}  // namespace swseg
