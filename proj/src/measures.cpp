#include "swseg/measures.hpp"

#include <algorithm>

namespace swseg {

namespace {

struct Bbox {
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // inclusive; empty when x1 < x0
    void add(int x, int y) {
        if (x1 < x0) {
            x0 = x1 = x;
            y0 = y1 = y;
        } else {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    Bbox merged(const Bbox& o) const {
        Bbox b = *this;
        if (o.x1 >= o.x0) {
            b.add(o.x0, o.y0);
            b.add(o.x1, o.y1);
        }
        return b;
    }
};

// Bottom-up sweep over cluster pixel sets. Children lists are merged into the
// parent and then dropped, so at most one live list per pixel exists at any
// time. `visit` sees each node's pixels and its eroded local mask.
template <typename Visit>
void sweep_eroded_masks(const IndexedHierarchy& h, const StructuringElement& se, Visit visit) {
    const auto grid = h.mst->rag->grid;
    if (grid == nullptr) throw DataError("eroded measures need a pixel-backed hierarchy");
    const std::int32_t n = h.n_leaves();
    const int img_w = grid->width;

    std::vector<std::vector<std::int32_t>> live(static_cast<std::size_t>(h.n_nodes()));
    std::vector<Bbox> boxes(static_cast<std::size_t>(h.n_nodes()));

    auto process = [&](std::int32_t node) {
        const auto& pixels = live[static_cast<std::size_t>(node)];
        const Bbox& box = boxes[static_cast<std::size_t>(node)];
        const int bw = box.x1 - box.x0 + 1;
        const int bh = box.y1 - box.y0 + 1;
        Mask local(bw, bh, 0);
        for (std::int32_t p : pixels) {
            const int x = p % img_w - box.x0;
            const int y = p / img_w - box.y0;
            local.at(x, y) = 1;
        }
        const Mask eroded_mask = erode(local, se);
        visit(node, pixels, box, eroded_mask);
    };

    for (std::int32_t leaf = 0; leaf < n; ++leaf) {
        const auto begin = grid->leaf_offset[static_cast<std::size_t>(leaf)];
        const auto end = grid->leaf_offset[static_cast<std::size_t>(leaf) + 1];
        auto& pixels = live[static_cast<std::size_t>(leaf)];
        pixels.assign(grid->leaf_pixels.begin() + begin, grid->leaf_pixels.begin() + end);
        Bbox& box = boxes[static_cast<std::size_t>(leaf)];
        for (std::int32_t p : pixels) box.add(p % img_w, p / img_w);
        process(leaf);
    }
    for (std::int32_t k = n; k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        auto& left = live[static_cast<std::size_t>(node.left)];
        auto& right = live[static_cast<std::size_t>(node.right)];
        auto& mine = live[static_cast<std::size_t>(k)];
        mine.resize(left.size() + right.size());
        std::merge(left.begin(), left.end(), right.begin(), right.end(), mine.begin());
        left.clear();
        left.shrink_to_fit();
        right.clear();
        right.shrink_to_fit();
        boxes[static_cast<std::size_t>(k)] =
            boxes[static_cast<std::size_t>(node.left)].merged(
                boxes[static_cast<std::size_t>(node.right)]);
        process(k);
    }
}

double merge_altitude(const IndexedHierarchy& h, std::int32_t node) {
    const std::int32_t parent = h.nodes[static_cast<std::size_t>(node)].parent;
    return parent == -1 ? h.nodes[static_cast<std::size_t>(node)].altitude
                        : h.nodes[static_cast<std::size_t>(parent)].altitude;
}

}  // namespace

const char* measure_kind_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::Surface: return "surface";
        case MeasureKind::Volume: return "volume";
        case MeasureKind::ErodedSurface: return "eroded-surface";
        case MeasureKind::ErodedVolume: return "eroded-volume";
    }
    return "?";
}

std::vector<double> eroded_node_areas(const IndexedHierarchy& h, const StructuringElement& se) {
    std::vector<double> out(static_cast<std::size_t>(h.n_nodes()), 0.0);
    sweep_eroded_masks(h, se,
                       [&](std::int32_t node, const std::vector<std::int32_t>&, const Bbox&,
                           const Mask& eroded_mask) {
                           out[static_cast<std::size_t>(node)] =
                               static_cast<double>(area(eroded_mask));
                       });
    return out;
}

std::vector<std::int32_t> erosion_fit_nodes(const IndexedHierarchy& h,
                                            const StructuringElement& se) {
    const auto grid = h.mst->rag->grid;
    if (grid == nullptr) throw DataError("eroded measures need a pixel-backed hierarchy");
    std::vector<std::int32_t> fit(static_cast<std::size_t>(grid->width) * grid->height, -1);
    const int img_w = grid->width;
    sweep_eroded_masks(h, se,
                       [&](std::int32_t node, const std::vector<std::int32_t>&, const Bbox& box,
                           const Mask& eroded_mask) {
                           for (int y = 0; y < eroded_mask.height; ++y) {
                               for (int x = 0; x < eroded_mask.width; ++x) {
                                   if (!eroded_mask.at(x, y)) continue;
                                   const std::size_t p =
                                       static_cast<std::size_t>(y + box.y0) * img_w + x + box.x0;
                                   if (fit[p] == -1) fit[p] = node;
                               }
                           }
                       });
    return fit;
}

NodeMeasures cluster_measure(const IndexedHierarchy& h, MeasureKind kind,
                             const std::optional<StructuringElement>& se) {
    if (measure_needs_erosion(kind) != se.has_value())
        throw ConfigError("structuring element must be given exactly for eroded measures");
    NodeMeasures out;
    out.at_merge.assign(static_cast<std::size_t>(h.n_nodes()), 0.0);
    const std::int32_t root = h.root();
    const double root_alt = h.nodes[static_cast<std::size_t>(root)].altitude;

    switch (kind) {
        case MeasureKind::Surface: {
            for (std::int32_t i = 0; i < h.n_nodes(); ++i)
                out.at_merge[static_cast<std::size_t>(i)] = h.node_area[static_cast<std::size_t>(i)];
            out.total = h.node_area[static_cast<std::size_t>(root)];
            break;
        }
        case MeasureKind::Volume: {
            // Lake volume with leaf floors at 0 telescopes to area x merge altitude.
            for (std::int32_t i = 0; i < h.n_nodes(); ++i)
                out.at_merge[static_cast<std::size_t>(i)] =
                    h.node_area[static_cast<std::size_t>(i)] * merge_altitude(h, i);
            out.total = h.node_area[static_cast<std::size_t>(root)] * root_alt;
            break;
        }
        case MeasureKind::ErodedSurface:
        case MeasureKind::ErodedVolume: {
            const std::vector<double> eroded = eroded_node_areas(h, *se);
            const auto grid = h.mst->rag->grid;
            Mask full(grid->width, grid->height, 1);
            const double domain = static_cast<double>(eroded_area(full, *se));
            if (kind == MeasureKind::ErodedSurface) {
                out.at_merge = eroded;
                out.total = domain;
            } else {
                for (std::int32_t i = 0; i < h.n_nodes(); ++i)
                    out.at_merge[static_cast<std::size_t>(i)] =
                        eroded[static_cast<std::size_t>(i)] * merge_altitude(h, i);
                out.total = domain * root_alt;
            }
            break;
        }
    }
    return out;
}

}  // namespace swseg
