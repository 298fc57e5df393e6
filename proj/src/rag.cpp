#include "swseg/rag.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace swseg {

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::int32_t n) : parent(static_cast<std::size_t>(n)) {
        for (std::int32_t i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    std::int32_t find(std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

}  // namespace

std::shared_ptr<const GridContext> GridContext::build(const LabelMap& fine) {
    auto ctx = std::make_shared<GridContext>();
    ctx->width = fine.width;
    ctx->height = fine.height;
    ctx->fine = fine;
    const std::int32_t n = fine.n_regions;
    ctx->leaf_offset.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::int32_t label : fine.labels) ++ctx->leaf_offset[static_cast<std::size_t>(label) + 1];
    for (std::int32_t i = 0; i < n; ++i)
        ctx->leaf_offset[static_cast<std::size_t>(i) + 1] +=
            ctx->leaf_offset[static_cast<std::size_t>(i)];
    ctx->leaf_pixels.resize(fine.pixels());
    std::vector<std::int32_t> cursor(ctx->leaf_offset.begin(), ctx->leaf_offset.end() - 1);
    for (std::size_t p = 0; p < fine.pixels(); ++p) {
        const auto label = static_cast<std::size_t>(fine.labels[p]);
        ctx->leaf_pixels[static_cast<std::size_t>(cursor[label]++)] =
            static_cast<std::int32_t>(p);
    }
    return ctx;
}

Rag Rag::from_edges(std::int32_t n_nodes,
                    const std::vector<std::tuple<int, int, double>>& edges) {
    Rag rag;
    rag.n_nodes = n_nodes;
    rag.nodes.assign(static_cast<std::size_t>(n_nodes), RagNode{1, {0, 0, 0}, {0, 0, 0}});
    for (const auto& [a, b, w] : edges) {
        if (a == b) throw InternalError("self edge in graph");
        if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes) throw InternalError("bad node id");
        RagEdge e;
        e.p = static_cast<std::int32_t>(std::min(a, b));
        e.q = static_cast<std::int32_t>(std::max(a, b));
        e.weight = w;
        e.boundary_len = 1;
        rag.edges.push_back(e);
    }
    std::sort(rag.edges.begin(), rag.edges.end(),
              [](const RagEdge& a, const RagEdge& b) { return std::tie(a.p, a.q) < std::tie(b.p, b.q); });
    for (std::size_t i = 1; i < rag.edges.size(); ++i) {
        if (rag.edges[i].p == rag.edges[i - 1].p && rag.edges[i].q == rag.edges[i - 1].q)
            throw InternalError("duplicate edge in graph");
    }
    return rag;
}

std::int32_t Rag::components() const {
    UnionFind uf(n_nodes);
    std::int32_t merges = 0;
    for (const RagEdge& e : edges)
        if (uf.unite(e.p, e.q)) ++merges;
    return n_nodes - merges;
}

Rag build_rag(const Image& img, const LabelMap& labels, const ScalarField& relief,
              EdgeWeight weight_kind) {
    if (img.width != labels.width || img.height != labels.height ||
        img.width != relief.width || img.height != relief.height) {
        throw DataError("image, labels and relief dimensions must match");
    }
    const int w = img.width;
    const int h = img.height;
    const std::int32_t n = labels.n_regions;

    Rag rag;
    rag.n_nodes = n;
    rag.channels = img.channels;
    rag.nodes.assign(static_cast<std::size_t>(n), RagNode{});
    for (std::size_t p = 0; p < labels.pixels(); ++p) {
        RagNode& node = rag.nodes[static_cast<std::size_t>(labels.labels[p])];
        ++node.area;
        for (int c = 0; c < img.channels; ++c) {
            const double v = img.plane(c)[p];
            node.sum[c] += v;
            node.sumsq[c] += v * v;
        }
    }

    struct Accum {
        double pass = 0.0;
        double total = 0.0;
        std::int64_t count = 0;
    };
    std::unordered_map<std::uint64_t, Accum> accum;
    auto visit_pair = [&](std::size_t a, std::size_t b) {
        const std::int32_t la = labels.labels[a];
        const std::int32_t lb = labels.labels[b];
        if (la == lb) return;
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(la, lb)) << 32) |
            static_cast<std::uint32_t>(std::max(la, lb));
        // The pair connects when flooding reaches the higher of its two pixels.
        const double level = std::max(relief.data[a], relief.data[b]);
        auto [it, fresh] = accum.try_emplace(key);
        Accum& acc = it->second;
        if (fresh || level < acc.pass) acc.pass = level;
        acc.total += level;
        ++acc.count;
    };
    for (int y = 0; y < h; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) visit_pair(row + x, row + x + 1);
            if (y + 1 < h) visit_pair(row + x, row + x + w);
        }
    }
    rag.edges.reserve(accum.size());
    for (const auto& [key, acc] : accum) {
        RagEdge e;
        e.p = static_cast<std::int32_t>(key >> 32);
        e.q = static_cast<std::int32_t>(key & 0xffffffffu);
        e.weight = weight_kind == EdgeWeight::PassValue ? acc.pass
                                                        : acc.total / static_cast<double>(acc.count);
        e.boundary_len = acc.count;
        rag.edges.push_back(e);
    }
    std::sort(rag.edges.begin(), rag.edges.end(),
              [](const RagEdge& a, const RagEdge& b) { return std::tie(a.p, a.q) < std::tie(b.p, b.q); });

    if (n > 1 && rag.components() != 1)
        throw InternalError("region adjacency graph is disconnected");
    rag.grid = GridContext::build(labels);
    return rag;
}

}  // namespace swseg
