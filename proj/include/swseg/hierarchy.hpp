#pragma once

#include <memory>
#include <string>

#include "swseg/mst.hpp"

namespace swseg {

/// Dendrogram node. Leaves occupy [0, n); internal nodes [n, 2n-1) in merge
/// order, so parent indices are always larger than child indices and altitudes
/// never decrease towards the root.
struct DendNode {
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t parent = -1;
    std::int32_t mst_pos = -1;  // MST edge creating this node (internal only)
    double altitude = 0.0;      // leaves stay at 0
};

/// A binary merge tree over an MST with an increasing altitude map; the pair
/// (tree, altitudes) fixes every threshold cut of the image.
struct IndexedHierarchy {
    std::shared_ptr<const Mst> mst;
    std::vector<DendNode> nodes;          // 2n-1 entries, leaves first
    std::vector<double> node_area;        // pixel area per node (1 for abstract leaves)
    std::string provenance;               // operator-chain grammar string

    std::int32_t n_leaves() const { return mst->n_nodes(); }
    std::int32_t n_nodes() const { return static_cast<std::int32_t>(nodes.size()); }
    std::int32_t root() const { return n_nodes() - 1; }
    double max_altitude() const {
        return n_leaves() < 2 ? 0.0 : nodes[static_cast<std::size_t>(root())].altitude;
    }
    /// Altitude at which the MST edge at `pos` disappears, i.e. its new-node altitude.
    double edge_altitude(std::int32_t pos) const {
        return mst->weights[static_cast<std::size_t>(pos)];
    }
};

/// Kruskal replay: unite MST edges by increasing (weight, rag edge index); each
/// union creates one internal node whose altitude is the edge weight.
IndexedHierarchy build_dendrogram(std::shared_ptr<const Mst> mst,
                                  std::string provenance = "grad");

/// Flat partition of the leaves. Labels are contiguous from 0 in order of the
/// first leaf of each region.
struct Partition {
    std::int32_t n_regions = 0;
    std::vector<std::int32_t> leaf_label;
    std::string cut_param;
};

/// Removes every MST edge with altitude strictly above lambda.
Partition cut_at(const IndexedHierarchy& h, double lambda);

/// Removes the k-1 highest edges (ties by rag edge index); exactly k regions.
Partition cut_to_k(const IndexedHierarchy& h, std::int32_t k);

/// Minimum spanning forest rooted in the marked leaves: an MST edge is cut iff
/// both clusters it merges contain at least one marker.
Partition marker_segmentation(const IndexedHierarchy& h,
                              const std::vector<std::int32_t>& marker_leaves);

/// Maps each fine region to its partition label.
LabelMap partition_labelmap(const Partition& p, const LabelMap& fine);

/// Lowest common dendrogram ancestor of two leaves.
std::int32_t lca_node(const IndexedHierarchy& h, std::int32_t leaf_a, std::int32_t leaf_b);

/// Binary-lifting ancestor index for bulk LCA queries (saliency, contour
/// bookkeeping); O(n log n) to build, O(log n) per query.
class LcaIndex {
public:
    explicit LcaIndex(const IndexedHierarchy& h);
    std::int32_t lca(std::int32_t a, std::int32_t b) const;

private:
    std::vector<std::int32_t> depth_;
    std::vector<std::vector<std::int32_t>> up_;  // up_[j][v] = 2^j-th ancestor
};

/// Altitude of the lowest common dendrogram ancestor, the ultrametric distance.
double lca_altitude(const IndexedHierarchy& h, std::int32_t leaf_a, std::int32_t leaf_b);

}  // namespace swseg
