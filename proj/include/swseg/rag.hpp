#pragma once

#include <memory>
#include <vector>

#include "swseg/image.hpp"

namespace swseg {

/// Pixel backing for a fine partition: who owns which pixels. Shared by the
/// hierarchy measures (cluster masks), saliency rendering and label mapping.
struct GridContext {
    int width = 0;
    int height = 0;
    LabelMap fine;
    std::vector<std::int32_t> leaf_offset;  // CSR: pixels of leaf i are
    std::vector<std::int32_t> leaf_pixels;  // leaf_pixels[leaf_offset[i] .. leaf_offset[i+1])

    static std::shared_ptr<const GridContext> build(const LabelMap& fine);
};

struct RagEdge {
    std::int32_t p = 0;
    std::int32_t q = 0;             // p < q
    double weight = 0.0;
    std::int64_t boundary_len = 0;  // 4-adjacent pixel pairs across the regions
};

/// Per-region accumulators gathered in the same pass that finds the edges.
struct RagNode {
    std::int64_t area = 0;
    double sum[3] = {0, 0, 0};
    double sumsq[3] = {0, 0, 0};
};

enum class EdgeWeight {
    PassValue,      // min over straddling pixel pairs of max(relief(p), relief(q))
    MeanBoundary,   // mean over straddling pairs of max(relief(p), relief(q))
};

/// Region adjacency graph over a fine partition: one node per region, one
/// edge per 4-adjacent region pair. Immutable once built.
struct Rag {
    std::int32_t n_nodes = 0;
    int channels = 1;
    std::vector<RagEdge> edges;   // sorted by (p, q)
    std::vector<RagNode> nodes;
    std::shared_ptr<const GridContext> grid;  // null for abstract graphs

    /// Abstract graph for tests and fixtures; unit areas, no pixel backing.
    static Rag from_edges(std::int32_t n_nodes,
                          const std::vector<std::tuple<int, int, double>>& edges);

    std::int32_t components() const;
};

Rag build_rag(const Image& img, const LabelMap& labels, const ScalarField& relief,
              EdgeWeight weight_kind = EdgeWeight::PassValue);

}  // namespace swseg
