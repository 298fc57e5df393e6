#include "swseg/mst.hpp"

#include <algorithm>

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

std::shared_ptr<const Mst> minimum_spanning_tree(std::shared_ptr<const Rag> rag) {
    const std::int32_t n = rag->n_nodes;
    auto mst = std::make_shared<Mst>();
    mst->rag = rag;
    if (n <= 1) return mst;

    UnionFind uf(n);
    std::vector<std::int32_t> chosen;
    std::int32_t n_components = n;
    // cheapest outgoing edge per component, keyed lexicographically by
    // (weight, edge index) so the selection is unique even with ties.
    std::vector<std::int32_t> cheapest(static_cast<std::size_t>(n));
    while (true) {
        std::fill(cheapest.begin(), cheapest.end(), -1);
        bool any = false;
        for (std::int32_t e = 0; e < static_cast<std::int32_t>(rag->edges.size()); ++e) {
            const RagEdge& edge = rag->edges[static_cast<std::size_t>(e)];
            const std::int32_t a = uf.find(edge.p);
            const std::int32_t b = uf.find(edge.q);
            if (a == b) continue;
            any = true;
            for (std::int32_t comp : {a, b}) {
                std::int32_t& best = cheapest[static_cast<std::size_t>(comp)];
                if (best == -1 || edge.weight < rag->edges[static_cast<std::size_t>(best)].weight ||
                    (edge.weight == rag->edges[static_cast<std::size_t>(best)].weight && e < best)) {
                    best = e;
                }
            }
        }
        if (!any) break;
        for (std::int32_t comp = 0; comp < n; ++comp) {
            const std::int32_t e = cheapest[static_cast<std::size_t>(comp)];
            if (e == -1) continue;
            const RagEdge& edge = rag->edges[static_cast<std::size_t>(e)];
            if (uf.unite(edge.p, edge.q)) {
                chosen.push_back(e);
                --n_components;
            }
        }
        if (n_components == 1) break;
    }
    if (n_components != 1) {
        throw DataError("graph is disconnected: " + std::to_string(n_components) +
                        " components");
    }
    std::sort(chosen.begin(), chosen.end());
    mst->edge_ids = std::move(chosen);
    mst->weights.reserve(mst->edge_ids.size());
    for (std::int32_t id : mst->edge_ids)
        mst->weights.push_back(rag->edges[static_cast<std::size_t>(id)].weight);
    return mst;
}

}  // namespace swseg
