// Independent brute-force oracles used to freeze expected values. These
// deliberately share no code with the library implementations they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "swseg/hierarchy.hpp"
#include "swseg/morphology.hpp"

namespace oracles {

using swseg::Image;
using swseg::IndexedHierarchy;
using swseg::LabelMap;
using swseg::Mask;
using swseg::ScalarField;
using swseg::StructuringElement;

// Erosion by direct per-pixel sweep over the element offsets.
inline Mask brute_erode(const Mask& mask, const StructuringElement& se) {
    Mask out(mask.width, mask.height, 0);
    const auto offsets = se.offsets();
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            bool fits = true;
            for (const auto& [dx, dy] : offsets) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx < 0 || nx >= mask.width || ny < 0 || ny >= mask.height ||
                    !mask.at(nx, ny)) {
                    fits = false;
                    break;
                }
            }
            out.at(x, y) = fits ? 1 : 0;
        }
    }
    return out;
}

inline std::uint64_t brute_eroded_area(const Mask& mask, const StructuringElement& se) {
    const Mask eroded = brute_erode(mask, se);
    std::uint64_t count = 0;
    for (auto v : eroded.data) count += v;
    return count;
}

// Morphological gradient by direct disk sweep on the luminance.
inline ScalarField brute_gradient(const Image& img, int radius) {
    ScalarField lum(img.width, img.height);
    for (std::size_t p = 0; p < img.pixels(); ++p) {
        float s = 0.0f;
        for (int c = 0; c < img.channels; ++c) s += img.plane(c)[p];
        lum.data[p] = s / static_cast<float>(img.channels);
    }
    ScalarField out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            float lo = std::numeric_limits<float>::infinity();
            float hi = -lo;
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (dx * dx + dy * dy > radius * radius) continue;
                    const int nx = x + dx;
                    const int ny = y + dy;
                    if (nx < 0 || nx >= img.width || ny < 0 || ny >= img.height) continue;
                    lo = std::min(lo, lum.at(nx, ny));
                    hi = std::max(hi, lum.at(nx, ny));
                }
            }
            out.at(x, y) = hi - lo;
        }
    }
    return out;
}

// Squared distance to nearest background (outside counts) by full scan.
inline std::vector<std::int64_t> brute_sq_distance(const Mask& mask) {
    std::vector<std::int64_t> out(mask.pixels(), 0);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            const std::int64_t border =
                std::min({x + 1, y + 1, mask.width - x, mask.height - y});
            best = border * border;
            for (int qy = 0; qy < mask.height; ++qy) {
                for (int qx = 0; qx < mask.width; ++qx) {
                    if (mask.at(qx, qy)) continue;
                    const std::int64_t dx = qx - x;
                    const std::int64_t dy = qy - y;
                    best = std::min(best, dx * dx + dy * dy);
                }
            }
            out[static_cast<std::size_t>(y) * mask.width + x] = best;
        }
    }
    return out;
}

// Adjacent-region pairs, boundary lengths and pass values by scanning every
// 4-adjacent pixel pair.
struct AdjacencyInfo {
    std::int64_t boundary_len = 0;
    double pass = std::numeric_limits<double>::infinity();
    double sum = 0.0;
};
inline std::map<std::pair<int, int>, AdjacencyInfo> brute_adjacency(const LabelMap& labels,
                                                                    const ScalarField& relief) {
    std::map<std::pair<int, int>, AdjacencyInfo> out;
    auto visit = [&](int ax, int ay, int bx, int by) {
        const int la = labels.at(ax, ay);
        const int lb = labels.at(bx, by);
        if (la == lb) return;
        const auto key = std::make_pair(std::min(la, lb), std::max(la, lb));
        const double level = std::max(relief.at(ax, ay), relief.at(bx, by));
        auto& info = out[key];
        ++info.boundary_len;
        info.pass = std::min(info.pass, level);
        info.sum += level;
    };
    for (int y = 0; y < labels.height; ++y) {
        for (int x = 0; x < labels.width; ++x) {
            if (x + 1 < labels.width) visit(x, y, x + 1, y);
            if (y + 1 < labels.height) visit(x, y, x, y + 1);
        }
    }
    return out;
}

// Ordered-immersion watershed implemented without a heap: repeatedly pick the
// frontier entry with the lowest (value, insertion order) by linear scan.
inline std::vector<std::int32_t> reference_flood(const ScalarField& relief,
                                                 const std::vector<std::int32_t>& minima) {
    const int w = relief.width;
    const int h = relief.height;
    std::vector<std::int32_t> labels = minima;
    struct Entry {
        float value;
        std::int64_t order;
        std::int32_t pixel;
        std::int32_t claim;
        bool done;
    };
    std::vector<Entry> frontier;
    std::int64_t order = 0;
    auto push_neighbors = [&](std::int32_t p, std::int32_t claim) {
        const int x = p % w;
        const int y = p / w;
        const std::int32_t candidates[4] = {y > 0 ? p - w : -1, x > 0 ? p - 1 : -1,
                                            x + 1 < w ? p + 1 : -1, y + 1 < h ? p + w : -1};
        for (std::int32_t q : candidates) {
            if (q < 0 || labels[static_cast<std::size_t>(q)] >= 0) continue;
            frontier.push_back({relief.data[static_cast<std::size_t>(q)], order++, q, claim,
                                false});
        }
    };
    for (std::size_t p = 0; p < relief.pixels(); ++p)
        if (labels[p] >= 0) push_neighbors(static_cast<std::int32_t>(p), labels[p]);
    for (;;) {
        std::size_t best = frontier.size();
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            if (frontier[i].done) continue;
            if (best == frontier.size() ||
                frontier[i].value < frontier[best].value ||
                (frontier[i].value == frontier[best].value &&
                 frontier[i].order < frontier[best].order)) {
                best = i;
            }
        }
        if (best == frontier.size()) break;
        Entry& e = frontier[best];
        e.done = true;
        if (labels[static_cast<std::size_t>(e.pixel)] >= 0) continue;
        labels[static_cast<std::size_t>(e.pixel)] = e.claim;
        push_neighbors(e.pixel, e.claim);
    }
    return labels;
}

// Minimum spanning tree weight by enumerating every (n-1)-edge subset.
inline double exhaustive_mst_weight(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    const int m = static_cast<int>(edges.size());
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> pick(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i) pick[static_cast<std::size_t>(i)] = i;
    auto is_tree = [&]() {
        std::vector<int> parent(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
            return x;
        };
        int united = 0;
        for (int idx : pick) {
            const auto& [a, b, wgt] = edges[static_cast<std::size_t>(idx)];
            const int ra = find(a);
            const int rb = find(b);
            if (ra == rb) return false;
            parent[static_cast<std::size_t>(ra)] = rb;
            ++united;
        }
        return united == n - 1;
    };
    for (;;) {
        if (is_tree()) {
            double total = 0.0;
            for (int idx : pick) total += std::get<2>(edges[static_cast<std::size_t>(idx)]);
            best = std::min(best, total);
        }
        int i = n - 2;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - (n - 1) + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n - 1; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return best;
}

// Kruskal cross-check: total weight with (weight, index) ordering.
inline double kruskal_weight(int n, const std::vector<std::tuple<int, int, double>>& edges) {
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double wa = std::get<2>(edges[a]);
        const double wb = std::get<2>(edges[b]);
        if (wa != wb) return wa < wb;
        return a < b;
    });
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    double total = 0.0;
    int used = 0;
    for (std::size_t idx : order) {
        const auto& [a, b, wgt] = edges[idx];
        const int ra = find(a);
        const int rb = find(b);
        if (ra == rb) continue;
        parent[static_cast<std::size_t>(ra)] = rb;
        total += wgt;
        ++used;
    }
    return used == n - 1 ? total : std::numeric_limits<double>::infinity();
}

// Marker segmentation by literally suppressing, per marker pair, the highest
// (weight, rag edge id) edge on the MST path between them.
inline std::vector<std::int32_t> path_marker_classes(const IndexedHierarchy& h,
                                                     const std::vector<std::int32_t>& markers) {
    const std::int32_t n = h.n_leaves();
    // Adjacency of the MST with per-edge (weight, id).
    struct Arc {
        std::int32_t to;
        std::int32_t pos;
    };
    std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(n));
    for (std::int32_t pos = 0; pos < h.mst->n_edges(); ++pos) {
        const auto& e = h.mst->edge(pos);
        adj[static_cast<std::size_t>(e.p)].push_back({e.q, pos});
        adj[static_cast<std::size_t>(e.q)].push_back({e.p, pos});
    }
    auto path_edges = [&](std::int32_t from, std::int32_t to) {
        std::vector<std::int32_t> prev(static_cast<std::size_t>(n), -1);
        std::vector<std::int32_t> via(static_cast<std::size_t>(n), -1);
        std::vector<std::int32_t> stack{from};
        prev[static_cast<std::size_t>(from)] = from;
        while (!stack.empty()) {
            const std::int32_t v = stack.back();
            stack.pop_back();
            for (const Arc& a : adj[static_cast<std::size_t>(v)]) {
                if (prev[static_cast<std::size_t>(a.to)] != -1) continue;
                prev[static_cast<std::size_t>(a.to)] = v;
                via[static_cast<std::size_t>(a.to)] = a.pos;
                stack.push_back(a.to);
            }
        }
        std::vector<std::int32_t> edges;
        for (std::int32_t v = to; v != from; v = prev[static_cast<std::size_t>(v)])
            edges.push_back(via[static_cast<std::size_t>(v)]);
        return edges;
    };
    std::set<std::int32_t> cut;
    for (std::size_t i = 0; i < markers.size(); ++i) {
        for (std::size_t j = i + 1; j < markers.size(); ++j) {
            if (markers[i] == markers[j]) continue;
            std::int32_t best = -1;
            for (std::int32_t pos : path_edges(markers[i], markers[j])) {
                if (best == -1) {
                    best = pos;
                    continue;
                }
                const double wb = h.mst->weights[static_cast<std::size_t>(best)];
                const double wp = h.mst->weights[static_cast<std::size_t>(pos)];
                const auto ib = h.mst->edge_ids[static_cast<std::size_t>(best)];
                const auto ip = h.mst->edge_ids[static_cast<std::size_t>(pos)];
                if (wp > wb || (wp == wb && ip > ib)) best = pos;
            }
            if (best != -1) cut.insert(best);
        }
    }
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (std::int32_t pos = 0; pos < h.mst->n_edges(); ++pos) {
        if (cut.count(pos)) continue;
        const auto& e = h.mst->edge(pos);
        parent[static_cast<std::size_t>(find(e.p))] = find(e.q);
    }
    std::vector<std::int32_t> classes(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) classes[static_cast<std::size_t>(i)] = find(i);
    return classes;
}

// Mumford-Shah by explicit two passes: region means first, squared deviations
// second, contour by pair scan.
inline double two_pass_mumford_shah(const Image& img, const LabelMap& seg, double scale) {
    const int n = seg.n_regions;
    std::vector<double> area(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<double>> mean(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(img.channels), 0.0));
    for (std::size_t p = 0; p < seg.pixels(); ++p) {
        const auto r = static_cast<std::size_t>(seg.labels[p]);
        area[r] += 1.0;
        for (int c = 0; c < img.channels; ++c)
            mean[r][static_cast<std::size_t>(c)] += img.plane(c)[p];
    }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < img.channels; ++c)
            mean[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /=
                area[static_cast<std::size_t>(r)];
    double variance = 0.0;
    for (std::size_t p = 0; p < seg.pixels(); ++p) {
        const auto r = static_cast<std::size_t>(seg.labels[p]);
        for (int c = 0; c < img.channels; ++c) {
            const double d = img.plane(c)[p] - mean[r][static_cast<std::size_t>(c)];
            variance += d * d;
        }
    }
    std::int64_t contour = 0;
    for (int y = 0; y < seg.height; ++y) {
        for (int x = 0; x < seg.width; ++x) {
            if (x + 1 < seg.width && seg.at(x, y) != seg.at(x + 1, y)) ++contour;
            if (y + 1 < seg.height && seg.at(x, y) != seg.at(x, y + 1)) ++contour;
        }
    }
    return variance + scale * static_cast<double>(contour);
}

// Lake volume of each node at its merge level by explicit per-level
// accumulation of area x altitude slabs along every pixel's cluster chain.
inline std::vector<double> per_level_volume(const IndexedHierarchy& h) {
    const std::int32_t total = h.n_nodes();
    std::vector<double> vol_internal(static_cast<std::size_t>(total), 0.0);
    for (std::int32_t k = h.n_leaves(); k < total; ++k) {
        const auto& node = h.nodes[static_cast<std::size_t>(k)];
        for (std::int32_t child : {node.left, node.right}) {
            const double child_alt = h.nodes[static_cast<std::size_t>(child)].altitude;
            vol_internal[static_cast<std::size_t>(k)] +=
                vol_internal[static_cast<std::size_t>(child)] +
                h.node_area[static_cast<std::size_t>(child)] * (node.altitude - child_alt);
        }
    }
    std::vector<double> at_merge(static_cast<std::size_t>(total), 0.0);
    for (std::int32_t i = 0; i < total; ++i) {
        const auto& node = h.nodes[static_cast<std::size_t>(i)];
        const double merge_alt = node.parent == -1
                                     ? node.altitude
                                     : h.nodes[static_cast<std::size_t>(node.parent)].altitude;
        at_merge[static_cast<std::size_t>(i)] =
            vol_internal[static_cast<std::size_t>(i)] +
            h.node_area[static_cast<std::size_t>(i)] * (merge_alt - node.altitude);
    }
    return at_merge;
}

// LCA altitude by explicit ancestor sets.
inline double brute_lca_altitude(const IndexedHierarchy& h, std::int32_t a, std::int32_t b) {
    std::set<std::int32_t> ancestors;
    for (std::int32_t v = a; v != -1; v = h.nodes[static_cast<std::size_t>(v)].parent)
        ancestors.insert(v);
    for (std::int32_t v = b; v != -1; v = h.nodes[static_cast<std::size_t>(v)].parent)
        if (ancestors.count(v)) return h.nodes[static_cast<std::size_t>(v)].altitude;
    return -1.0;
}

}  // namespace oracles
