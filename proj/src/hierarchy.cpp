#include "swseg/hierarchy.hpp"

#include <algorithm>
#include <numeric>

namespace swseg {

namespace {

// Relabels an arbitrary per-leaf class id to contiguous labels ordered by
// first occurrence.
Partition make_partition(const std::vector<std::int32_t>& classes, std::string cut_param) {
    Partition out;
    out.cut_param = std::move(cut_param);
    out.leaf_label.assign(classes.size(), -1);
    std::vector<std::int32_t> remap(classes.size(), -1);
    std::int32_t next = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::int32_t& slot = remap[static_cast<std::size_t>(classes[i])];
        if (slot == -1) slot = next++;
        out.leaf_label[i] = slot;
    }
    out.n_regions = next;
    return out;
}

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::int32_t n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int32_t find(std::int32_t x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        parent[static_cast<std::size_t>(find(b))] = find(a);
    }
};

// MST edge positions by increasing (weight, rag edge index): the global merge order.
std::vector<std::int32_t> merge_order(const Mst& mst) {
    std::vector<std::int32_t> order(static_cast<std::size_t>(mst.n_edges()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        const double wa = mst.weights[static_cast<std::size_t>(a)];
        const double wb = mst.weights[static_cast<std::size_t>(b)];
        if (wa != wb) return wa < wb;
        return mst.edge_ids[static_cast<std::size_t>(a)] < mst.edge_ids[static_cast<std::size_t>(b)];
    });
    return order;
}

}  // namespace

IndexedHierarchy build_dendrogram(std::shared_ptr<const Mst> mst, std::string provenance) {
    IndexedHierarchy h;
    h.provenance = std::move(provenance);
    const std::int32_t n = mst->n_nodes();
    h.nodes.assign(static_cast<std::size_t>(2 * n - 1), DendNode{});
    h.node_area.assign(static_cast<std::size_t>(2 * n - 1), 0.0);
    for (std::int32_t i = 0; i < n; ++i)
        h.node_area[static_cast<std::size_t>(i)] =
            static_cast<double>(mst->rag->nodes[static_cast<std::size_t>(i)].area);

    UnionFind uf(n);
    std::vector<std::int32_t> comp_node(static_cast<std::size_t>(n));
    std::iota(comp_node.begin(), comp_node.end(), 0);
    std::int32_t next = n;
    for (std::int32_t pos : merge_order(*mst)) {
        const RagEdge& e = mst->edge(pos);
        const std::int32_t ra = uf.find(e.p);
        const std::int32_t rb = uf.find(e.q);
        if (ra == rb) throw InternalError("MST edge closes a cycle");
        std::int32_t ca = comp_node[static_cast<std::size_t>(ra)];
        std::int32_t cb = comp_node[static_cast<std::size_t>(rb)];
        if (ca > cb) std::swap(ca, cb);
        DendNode& node = h.nodes[static_cast<std::size_t>(next)];
        node.left = ca;
        node.right = cb;
        node.mst_pos = pos;
        node.altitude = mst->weights[static_cast<std::size_t>(pos)];
        h.nodes[static_cast<std::size_t>(ca)].parent = next;
        h.nodes[static_cast<std::size_t>(cb)].parent = next;
        h.node_area[static_cast<std::size_t>(next)] =
            h.node_area[static_cast<std::size_t>(ca)] + h.node_area[static_cast<std::size_t>(cb)];
        uf.unite(e.p, e.q);
        comp_node[static_cast<std::size_t>(uf.find(e.p))] = next;
        ++next;
    }
    h.mst = std::move(mst);
    return h;
}

Partition cut_at(const IndexedHierarchy& h, double lambda) {
    const std::int32_t n = h.n_leaves();
    UnionFind uf(n);
    for (std::int32_t k = n; k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        if (node.altitude > lambda) break;  // altitudes are sorted along internal nodes
        const RagEdge& e = h.mst->edge(node.mst_pos);
        uf.unite(e.p, e.q);
    }
    std::vector<std::int32_t> classes(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) classes[static_cast<std::size_t>(i)] = uf.find(i);
    return make_partition(classes, "lambda:" + format_double(lambda));
}

Partition cut_to_k(const IndexedHierarchy& h, std::int32_t k) {
    const std::int32_t n = h.n_leaves();
    if (k < 1 || k > n) throw ConfigError("cut region count out of range");
    UnionFind uf(n);
    // Internal nodes follow the merge order; keeping the first n-k merges
    // removes exactly the k-1 highest edges.
    for (std::int32_t j = 0; j < n - k; ++j) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(n + j)];
        const RagEdge& e = h.mst->edge(node.mst_pos);
        uf.unite(e.p, e.q);
    }
    std::vector<std::int32_t> classes(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) classes[static_cast<std::size_t>(i)] = uf.find(i);
    return make_partition(classes, "k:" + std::to_string(k));
}

Partition marker_segmentation(const IndexedHierarchy& h,
                              const std::vector<std::int32_t>& marker_leaves) {
    if (marker_leaves.empty()) throw ConfigError("marker set is empty");
    const std::int32_t n = h.n_leaves();
    std::vector<std::uint8_t> occupied(static_cast<std::size_t>(h.n_nodes()), 0);
    for (std::int32_t leaf : marker_leaves) {
        if (leaf < 0 || leaf >= n) throw ConfigError("marker leaf id out of range");
        occupied[static_cast<std::size_t>(leaf)] = 1;
    }
    for (std::int32_t k = n; k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        occupied[static_cast<std::size_t>(k)] =
            occupied[static_cast<std::size_t>(node.left)] |
            occupied[static_cast<std::size_t>(node.right)];
    }
    UnionFind uf(n);
    for (std::int32_t k = n; k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        const bool cut = occupied[static_cast<std::size_t>(node.left)] &&
                         occupied[static_cast<std::size_t>(node.right)];
        if (!cut) {
            const RagEdge& e = h.mst->edge(node.mst_pos);
            uf.unite(e.p, e.q);
        }
    }
    std::vector<std::int32_t> classes(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) classes[static_cast<std::size_t>(i)] = uf.find(i);
    return make_partition(classes, "markers");
}

LabelMap partition_labelmap(const Partition& p, const LabelMap& fine) {
    if (static_cast<std::int32_t>(p.leaf_label.size()) != fine.n_regions)
        throw DataError("partition and fine label map region counts differ");
    LabelMap out(fine.width, fine.height);
    out.n_regions = p.n_regions;
    for (std::size_t i = 0; i < fine.pixels(); ++i)
        out.labels[i] = p.leaf_label[static_cast<std::size_t>(fine.labels[i])];
    return out;
}

std::int32_t lca_node(const IndexedHierarchy& h, std::int32_t leaf_a, std::int32_t leaf_b) {
    std::int32_t a = leaf_a;
    std::int32_t b = leaf_b;
    // Parent ids grow with altitude, so walking the smaller index upward
    // converges to the lowest common ancestor.
    while (a != b) {
        if (a < b)
            a = h.nodes[static_cast<std::size_t>(a)].parent;
        else
            b = h.nodes[static_cast<std::size_t>(b)].parent;
        if (a == -1 || b == -1) throw InternalError("leaves in different trees");
    }
    return a;
}

double lca_altitude(const IndexedHierarchy& h, std::int32_t leaf_a, std::int32_t leaf_b) {
    if (leaf_a == leaf_b) return 0.0;
    return h.nodes[static_cast<std::size_t>(lca_node(h, leaf_a, leaf_b))].altitude;
}

LcaIndex::LcaIndex(const IndexedHierarchy& h) {
    const std::int32_t total = h.n_nodes();
    depth_.assign(static_cast<std::size_t>(total), 0);
    for (std::int32_t k = total - 1; k >= 0; --k) {
        const std::int32_t parent = h.nodes[static_cast<std::size_t>(k)].parent;
        if (parent != -1)
            depth_[static_cast<std::size_t>(k)] = depth_[static_cast<std::size_t>(parent)] + 1;
    }
    int levels = 1;
    while ((1 << levels) < total) ++levels;
    up_.assign(static_cast<std::size_t>(levels), std::vector<std::int32_t>(
                                                     static_cast<std::size_t>(total)));
    for (std::int32_t v = 0; v < total; ++v) {
        const std::int32_t parent = h.nodes[static_cast<std::size_t>(v)].parent;
        up_[0][static_cast<std::size_t>(v)] = parent == -1 ? v : parent;
    }
    for (int j = 1; j < levels; ++j)
        for (std::int32_t v = 0; v < total; ++v)
            up_[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] =
                up_[static_cast<std::size_t>(j - 1)]
                   [static_cast<std::size_t>(up_[static_cast<std::size_t>(j - 1)]
                                                 [static_cast<std::size_t>(v)])];
}

std::int32_t LcaIndex::lca(std::int32_t a, std::int32_t b) const {
    if (depth_[static_cast<std::size_t>(a)] < depth_[static_cast<std::size_t>(b)]) std::swap(a, b);
    std::int32_t diff = depth_[static_cast<std::size_t>(a)] - depth_[static_cast<std::size_t>(b)];
    for (std::size_t j = 0; diff != 0; ++j, diff >>= 1)
        if (diff & 1) a = up_[j][static_cast<std::size_t>(a)];
    if (a == b) return a;
    for (std::size_t j = up_.size(); j-- > 0;) {
        if (up_[j][static_cast<std::size_t>(a)] != up_[j][static_cast<std::size_t>(b)]) {
            a = up_[j][static_cast<std::size_t>(a)];
            b = up_[j][static_cast<std::size_t>(b)];
        }
    }
    return up_[0][static_cast<std::size_t>(a)];
}

}  // namespace swseg
