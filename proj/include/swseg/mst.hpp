#pragma once

#include <memory>

#include "swseg/rag.hpp"

namespace swseg {

/// Minimum spanning tree of a Rag. `edge_ids` index into rag->edges;
/// `weights` start as copies of the Rag weights and are replaced wholesale by
/// the stochastic re-weighting (the topology never changes).
struct Mst {
    std::shared_ptr<const Rag> rag;
    std::vector<std::int32_t> edge_ids;  // ascending rag edge index
    std::vector<double> weights;         // parallel to edge_ids

    std::int32_t n_nodes() const { return rag->n_nodes; }
    std::int32_t n_edges() const { return static_cast<std::int32_t>(edge_ids.size()); }
    const RagEdge& edge(std::int32_t pos) const {
        return rag->edges[static_cast<std::size_t>(edge_ids[static_cast<std::size_t>(pos)])];
    }
};

/// Boruvka's algorithm. Ties are broken by ascending rag edge index, which
/// makes the tree unique; a disconnected graph raises an error naming the
/// number of components.
std::shared_ptr<const Mst> minimum_spanning_tree(std::shared_ptr<const Rag> rag);

}  // namespace swseg
