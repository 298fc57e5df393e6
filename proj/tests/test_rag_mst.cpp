#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "swseg/mst.hpp"
#include "swseg/watershed.hpp"

using namespace swseg;

namespace {

// Random connected graph: a random tree plus a few extra edges, weights drawn
// from a small set so ties actually happen.
std::vector<std::tuple<int, int, double>> random_graph(Rng& rng, int n, int extra,
                                                       bool distinct_weights) {
    std::vector<std::tuple<int, int, double>> edges;
    std::map<std::pair<int, int>, bool> used;
    for (int v = 1; v < n; ++v) {
        const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
        used[{u, v}] = true;
        edges.emplace_back(u, v, 0.0);
    }
    while (extra > 0) {
        const int a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const int b = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (a == b) continue;
        const auto key = std::make_pair(std::min(a, b), std::max(a, b));
        if (used.count(key)) continue;
        used[key] = true;
        edges.emplace_back(key.first, key.second, 0.0);
        --extra;
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        double w = distinct_weights
                       ? static_cast<double>(i) + rng.next_double() * 0.5
                       : static_cast<double>(rng.next_below(4));
        std::get<2>(edges[i]) = w;
    }
    return edges;
}

}  // namespace

TEST_CASE("2x2 grid of singleton regions gives the four grid edges") {
    Image img(2, 2, 1, 0.5f);
    LabelMap labels(2, 2);
    labels.labels = {0, 1, 2, 3};
    labels.n_regions = 4;
    ScalarField relief(2, 2, 0.0f);
    const Rag rag = build_rag(img, labels, relief);
    CHECK(rag.n_nodes == 4);
    REQUIRE(rag.edges.size() == 4);
    CHECK(rag.edges[0].p == 0);
    CHECK(rag.edges[0].q == 1);
    CHECK(rag.edges[1].p == 0);
    CHECK(rag.edges[1].q == 2);
    CHECK(rag.edges[2].p == 1);
    CHECK(rag.edges[2].q == 3);
    CHECK(rag.edges[3].p == 2);
    CHECK(rag.edges[3].q == 3);
}

TEST_CASE("single-region label map gives one node and no edges") {
    Image img(3, 3, 1, 0.1f);
    LabelMap labels(3, 3);
    labels.n_regions = 1;
    ScalarField relief(3, 3, 0.0f);
    const Rag rag = build_rag(img, labels, relief);
    CHECK(rag.n_nodes == 1);
    CHECK(rag.edges.empty());
    CHECK(rag.nodes[0].area == 9);
}

TEST_CASE("rag edges match the brute-force adjacency scan") {
    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        ScalarField relief(16, 16);
        for (auto& v : relief.data) v = static_cast<float>(rng.next_double());
        const LabelMap fine = watershed_fine_partition(relief);
        Image img(16, 16, 1);
        for (auto& v : img.data) v = static_cast<float>(rng.next_double());

        const Rag rag = build_rag(img, fine, relief);
        const auto expected = oracles::brute_adjacency(fine, relief);
        REQUIRE(rag.edges.size() == expected.size());
        for (const RagEdge& e : rag.edges) {
            const auto it = expected.find({e.p, e.q});
            REQUIRE(it != expected.end());
            CHECK(e.boundary_len == it->second.boundary_len);
            CHECK(e.weight == doctest::Approx(it->second.pass).epsilon(1e-12));
        }

        // Mean-boundary weights cross-checked on the same scan.
        const Rag mean_rag = build_rag(img, fine, relief, EdgeWeight::MeanBoundary);
        for (const RagEdge& e : mean_rag.edges) {
            const auto& info = expected.at({e.p, e.q});
            CHECK(e.weight ==
                  doctest::Approx(info.sum / static_cast<double>(info.boundary_len))
                      .epsilon(1e-12));
        }

        // Node stats against direct accumulation.
        std::vector<double> area(static_cast<std::size_t>(rag.n_nodes), 0.0);
        std::vector<double> sum(static_cast<std::size_t>(rag.n_nodes), 0.0);
        for (std::size_t p = 0; p < fine.pixels(); ++p) {
            area[static_cast<std::size_t>(fine.labels[p])] += 1.0;
            sum[static_cast<std::size_t>(fine.labels[p])] += img.data[p];
        }
        for (std::int32_t i = 0; i < rag.n_nodes; ++i) {
            CHECK(static_cast<double>(rag.nodes[static_cast<std::size_t>(i)].area) ==
                  area[static_cast<std::size_t>(i)]);
            CHECK(rag.nodes[static_cast<std::size_t>(i)].sum[0] ==
                  doctest::Approx(sum[static_cast<std::size_t>(i)]).epsilon(1e-9));
        }
    }
}

TEST_CASE("dimension mismatches are rejected") {
    Image img(3, 3, 1);
    LabelMap labels(4, 3);
    labels.n_regions = 1;
    ScalarField relief(3, 3);
    CHECK_THROWS_AS(build_rag(img, labels, relief), DataError);
}

TEST_CASE("triangle MST keeps the two light edges") {
    auto rag = std::make_shared<Rag>(Rag::from_edges(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}}));
    const auto mst = minimum_spanning_tree(rag);
    REQUIRE(mst->n_edges() == 2);
    double total = 0.0;
    for (double w : mst->weights) total += w;
    CHECK(total == 3.0);
}

TEST_CASE("a tree input is returned unchanged") {
    auto rag = std::make_shared<Rag>(
        Rag::from_edges(4, {{0, 1, 5.0}, {1, 2, 1.0}, {2, 3, 9.0}}));
    const auto mst = minimum_spanning_tree(rag);
    REQUIRE(mst->n_edges() == 3);
    CHECK(mst->edge_ids == std::vector<std::int32_t>{0, 1, 2});
}

TEST_CASE("boruvka equals the exhaustive minimum and kruskal") {
    Rng rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 4 + static_cast<int>(rng.next_below(5));  // 4..8 nodes
        const auto edges = random_graph(rng, n, 3, trial % 2 == 0);
        auto rag = std::make_shared<Rag>(Rag::from_edges(n, edges));
        const auto mst = minimum_spanning_tree(rag);
        double total = 0.0;
        for (double w : mst->weights) total += w;
        CHECK(total == doctest::Approx(oracles::exhaustive_mst_weight(n, edges)).epsilon(1e-9));
        CHECK(total == doctest::Approx(oracles::kruskal_weight(n, edges)).epsilon(1e-9));
    }
}

TEST_CASE("disconnected graphs name their component count") {
    auto rag = std::make_shared<Rag>(Rag::from_edges(5, {{0, 1, 1.0}, {2, 3, 1.0}}));
    try {
        minimum_spanning_tree(rag);
        FAIL("expected an error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("3 components") != std::string::npos);
    }
}
