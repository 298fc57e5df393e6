#include <doctest.h>

#include "oracles.hpp"
#include "swseg/chain.hpp"
#include "swseg/measures.hpp"

using namespace swseg;

namespace {

IndexedHierarchy abstract_tree(Rng& rng, int n, const std::vector<std::int64_t>& areas) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v))), v,
                           0.1 + rng.next_double());
    auto rag = std::make_shared<Rag>(Rag::from_edges(n, edges));
    for (int i = 0; i < n; ++i)
        rag->nodes[static_cast<std::size_t>(i)].area = areas[static_cast<std::size_t>(i)];
    return build_dendrogram(minimum_spanning_tree(rag));
}

// A pixel-backed hierarchy from a random relief.
IndexedHierarchy grid_hierarchy(Rng& rng, int w, int h) {
    Image img(w, h, 1);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    const ImageContext ctx = make_image_context(std::move(img));
    return build_dendrogram(ctx.mst);
}

}  // namespace

TEST_CASE("two unit leaves merging at altitude 2 have volume 2 at the merge") {
    auto rag = std::make_shared<Rag>(Rag::from_edges(2, {{0, 1, 2.0}}));
    const IndexedHierarchy h = build_dendrogram(minimum_spanning_tree(rag));
    const NodeMeasures vol = cluster_measure(h, MeasureKind::Volume);
    CHECK(vol.at_merge[0] == 2.0);
    CHECK(vol.at_merge[1] == 2.0);
}

TEST_CASE("surface of the root is the total area") {
    Rng rng(71);
    const IndexedHierarchy h = abstract_tree(rng, 6, {3, 1, 4, 1, 5, 9});
    const NodeMeasures surf = cluster_measure(h, MeasureKind::Surface);
    CHECK(surf.at_merge[static_cast<std::size_t>(h.root())] == 23.0);
    CHECK(surf.total == 23.0);
    // Parent surface is the sum of its children's.
    for (std::int32_t k = h.n_leaves(); k < h.n_nodes(); ++k) {
        const auto& node = h.nodes[static_cast<std::size_t>(k)];
        CHECK(surf.at_merge[static_cast<std::size_t>(k)] ==
              surf.at_merge[static_cast<std::size_t>(node.left)] +
                  surf.at_merge[static_cast<std::size_t>(node.right)]);
    }
}

TEST_CASE("volume equals the per-level integration oracle") {
    Rng rng(72);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<std::int64_t> areas(12);
        for (auto& a : areas) a = 1 + static_cast<std::int64_t>(rng.next_below(9));
        const IndexedHierarchy h = abstract_tree(rng, 12, areas);
        const NodeMeasures vol = cluster_measure(h, MeasureKind::Volume);
        const auto oracle = oracles::per_level_volume(h);
        for (std::int32_t i = 0; i < h.n_nodes(); ++i)
            CHECK(vol.at_merge[static_cast<std::size_t>(i)] ==
                  doctest::Approx(oracle[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
}

TEST_CASE("measure grows towards the parent at the same level") {
    Rng rng(73);
    const IndexedHierarchy h = abstract_tree(rng, 10, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2});
    for (MeasureKind kind : {MeasureKind::Surface, MeasureKind::Volume}) {
        const NodeMeasures m = cluster_measure(h, kind);
        for (std::int32_t k = h.n_leaves(); k < h.n_nodes(); ++k) {
            const auto& node = h.nodes[static_cast<std::size_t>(k)];
            // Children evaluated at the same merge level never exceed the parent.
            CHECK(m.at_merge[static_cast<std::size_t>(node.left)] <=
                  m.at_merge[static_cast<std::size_t>(k)] + 1e-12);
            CHECK(m.at_merge[static_cast<std::size_t>(node.right)] <=
                  m.at_merge[static_cast<std::size_t>(k)] + 1e-12);
        }
    }
}

TEST_CASE("eroded surface never exceeds surface; disk(0) reproduces it") {
    Rng rng(74);
    const IndexedHierarchy h = grid_hierarchy(rng, 14, 12);
    const NodeMeasures surf = cluster_measure(h, MeasureKind::Surface);
    const NodeMeasures ident =
        cluster_measure(h, MeasureKind::ErodedSurface, StructuringElement::disk(0));
    const NodeMeasures disk2 =
        cluster_measure(h, MeasureKind::ErodedSurface, StructuringElement::disk(2));
    for (std::int32_t i = 0; i < h.n_nodes(); ++i) {
        CHECK(ident.at_merge[static_cast<std::size_t>(i)] ==
              surf.at_merge[static_cast<std::size_t>(i)]);
        CHECK(disk2.at_merge[static_cast<std::size_t>(i)] <=
              surf.at_merge[static_cast<std::size_t>(i)]);
    }
    CHECK(ident.total == surf.total);
}

TEST_CASE("eroded node areas equal brute-force erosion of materialized masks") {
    Rng rng(75);
    const IndexedHierarchy h = grid_hierarchy(rng, 12, 10);
    const auto grid = h.mst->rag->grid;
    for (const auto& se : {StructuringElement::disk(1), StructuringElement::hseg(3),
                           StructuringElement::vseg(4)}) {
        const auto fast = eroded_node_areas(h, se);
        // Rebuild each node mask from leaf pixel lists and erode it brutally.
        std::vector<std::vector<std::int32_t>> leaves_of(
            static_cast<std::size_t>(h.n_nodes()));
        for (std::int32_t i = 0; i < h.n_leaves(); ++i)
            leaves_of[static_cast<std::size_t>(i)] = {i};
        for (std::int32_t k = h.n_leaves(); k < h.n_nodes(); ++k) {
            const auto& node = h.nodes[static_cast<std::size_t>(k)];
            auto& mine = leaves_of[static_cast<std::size_t>(k)];
            mine = leaves_of[static_cast<std::size_t>(node.left)];
            mine.insert(mine.end(), leaves_of[static_cast<std::size_t>(node.right)].begin(),
                        leaves_of[static_cast<std::size_t>(node.right)].end());
        }
        for (std::int32_t k = 0; k < h.n_nodes(); ++k) {
            Mask mask(grid->width, grid->height, 0);
            for (std::int32_t leaf : leaves_of[static_cast<std::size_t>(k)]) {
                for (std::int32_t idx = grid->leaf_offset[static_cast<std::size_t>(leaf)];
                     idx < grid->leaf_offset[static_cast<std::size_t>(leaf) + 1]; ++idx)
                    mask.data[static_cast<std::size_t>(
                        grid->leaf_pixels[static_cast<std::size_t>(idx)])] = 1;
            }
            CHECK(fast[static_cast<std::size_t>(k)] ==
                  static_cast<double>(oracles::brute_eroded_area(mask, se)));
        }
    }
}

TEST_CASE("erosion fit nodes are the lowest fitting ancestors") {
    Rng rng(76);
    const IndexedHierarchy h = grid_hierarchy(rng, 10, 10);
    const auto grid = h.mst->rag->grid;
    const auto se = StructuringElement::disk(1);
    const auto fit = erosion_fit_nodes(h, se);
    const auto eroded = eroded_node_areas(h, se);
    // fit(p) must have a positive eroded area, and no descendant of fit(p)
    // containing p may fit the element.
    for (std::size_t p = 0; p < fit.size(); ++p) {
        if (fit[p] == -1) continue;
        CHECK(eroded[static_cast<std::size_t>(fit[p])] > 0.0);
        std::int32_t node = grid->fine.labels[p];
        while (node != fit[p] && node != -1) {
            node = h.nodes[static_cast<std::size_t>(node)].parent;
        }
        CHECK(node == fit[p]);  // fit node lies on the pixel's ancestor chain
    }
}

TEST_CASE("eroded measures demand a pixel backing and a matching element") {
    Rng rng(77);
    const IndexedHierarchy abstract = abstract_tree(rng, 5, {1, 1, 1, 1, 1});
    CHECK_THROWS_AS(
        cluster_measure(abstract, MeasureKind::ErodedSurface, StructuringElement::disk(1)),
        DataError);
    CHECK_THROWS_AS(cluster_measure(abstract, MeasureKind::ErodedSurface), ConfigError);
    CHECK_THROWS_AS(cluster_measure(abstract, MeasureKind::Surface, StructuringElement::disk(1)),
                    ConfigError);
}
