#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "swseg/chain.hpp"
#include "swseg/sws.hpp"

using namespace swseg;

namespace {

IndexedHierarchy abstract_tree(Rng& rng, int n, std::int64_t max_area = 20) {
    std::vector<std::tuple<int, int, double>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v))), v,
                           0.05 + 0.95 * rng.next_double());
    auto rag = std::make_shared<Rag>(Rag::from_edges(n, edges));
    for (int i = 0; i < n; ++i)
        rag->nodes[static_cast<std::size_t>(i)].area =
            1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(max_area)));
    return build_dendrogram(minimum_spanning_tree(rag));
}

MarkerModel model(MarkerProcess process, MeasureKind kind, double amount,
                  std::optional<StructuringElement> se = std::nullopt) {
    MarkerModel m;
    m.process = process;
    m.kind = kind;
    m.amount = amount;
    m.se = std::move(se);
    return m;
}

}  // namespace

TEST_CASE("one uniform marker can never hit both sides") {
    Rng rng(81);
    const IndexedHierarchy h = abstract_tree(rng, 12);
    const auto p = analytic_cut_probability(h, model(MarkerProcess::Uniform,
                                                     MeasureKind::Surface, 1));
    for (double v : p) CHECK(v == 0.0);
    const auto freq = monte_carlo_cut_frequency(
        h, model(MarkerProcess::Uniform, MeasureKind::Surface, 1), 2000, 99);
    for (double v : freq) CHECK(v == 0.0);
}

TEST_CASE("two uniform markers on two equal halves cut with probability one half") {
    auto rag = std::make_shared<Rag>(Rag::from_edges(2, {{0, 1, 1.0}}));
    rag->nodes[0].area = 7;
    rag->nodes[1].area = 7;
    const IndexedHierarchy h = build_dendrogram(minimum_spanning_tree(rag));
    const auto p =
        analytic_cut_probability(h, model(MarkerProcess::Uniform, MeasureKind::Surface, 2));
    REQUIRE(p.size() == 1);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));

    // 3 sigma at 1e4 trials around 0.5 is 0.015.
    const auto freq = monte_carlo_cut_frequency(
        h, model(MarkerProcess::Uniform, MeasureKind::Surface, 2), 10000, 7);
    CHECK(freq[0] == doctest::Approx(0.5).epsilon(0.031));
}

TEST_CASE("poisson with theta*m = ln 2 on both sides cuts with probability 1/4") {
    auto rag = std::make_shared<Rag>(Rag::from_edges(2, {{0, 1, 1.0}}));
    rag->nodes[0].area = 1;
    rag->nodes[1].area = 1;
    const IndexedHierarchy h = build_dendrogram(minimum_spanning_tree(rag));
    MarkerModel m = model(MarkerProcess::Poisson, MeasureKind::Surface, std::log(2.0));
    m.amount_is_rate = true;  // theta = ln 2, leaf measure 1
    const auto p = analytic_cut_probability(h, m);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("monte carlo is deterministic for a fixed seed, whatever the workers") {
    Rng rng(82);
    const IndexedHierarchy h = abstract_tree(rng, 15);
    const MarkerModel m = model(MarkerProcess::Poisson, MeasureKind::Volume, 60);
    const auto a = monte_carlo_cut_frequency(h, m, 4000, 123, 1);
    const auto b = monte_carlo_cut_frequency(h, m, 4000, 123, 2);
    const auto c = monte_carlo_cut_frequency(h, m, 4000, 123, 3);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("closed form matches monte carlo within the binomial band") {
    Rng rng(83);
    const IndexedHierarchy h = abstract_tree(rng, 20);
    const std::int64_t trials = 100000;
    for (MarkerProcess process : {MarkerProcess::Poisson, MarkerProcess::Uniform}) {
        for (MeasureKind kind : {MeasureKind::Surface, MeasureKind::Volume}) {
            const MarkerModel m = model(process, kind, 80);
            const auto p = analytic_cut_probability(h, m);
            const auto freq = monte_carlo_cut_frequency(h, m, trials, 4242, 2);
            for (std::size_t e = 0; e < p.size(); ++e) {
                const double band =
                    4.0 * std::sqrt(p[e] * (1.0 - p[e]) / static_cast<double>(trials)) + 1e-3;
                CHECK(std::abs(p[e] - freq[e]) <= band);
            }
        }
    }
}

TEST_CASE("closed form matches monte carlo for eroded kinds on a pixel grid") {
    Rng rng(84);
    Image img(16, 16, 1);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    const ImageContext ctx = make_image_context(std::move(img));
    const IndexedHierarchy h = build_dendrogram(ctx.mst);
    const std::int64_t trials = 60000;
    for (MeasureKind kind : {MeasureKind::ErodedSurface, MeasureKind::ErodedVolume}) {
        const MarkerModel m = model(MarkerProcess::Poisson, kind, 50, StructuringElement::disk(1));
        const auto p = analytic_cut_probability(h, m);
        const auto freq = monte_carlo_cut_frequency(h, m, trials, 777, 2);
        for (std::size_t e = 0; e < p.size(); ++e) {
            const double band =
                4.0 * std::sqrt(p[e] * (1.0 - p[e]) / static_cast<double>(trials)) + 1e-3;
            CHECK(std::abs(p[e] - freq[e]) <= band);
        }
    }
}

TEST_CASE("re-weighting keeps topology, bounds weights, rises with intensity") {
    Rng rng(85);
    const IndexedHierarchy h = abstract_tree(rng, 25);
    const IndexedHierarchy low = sws_reweight(h, model(MarkerProcess::Poisson,
                                                       MeasureKind::Surface, 20));
    const IndexedHierarchy high = sws_reweight(h, model(MarkerProcess::Poisson,
                                                        MeasureKind::Surface, 200));
    CHECK(low.mst->edge_ids == h.mst->edge_ids);  // edge-set identity
    for (std::int32_t pos = 0; pos < h.mst->n_edges(); ++pos) {
        const double wl = low.mst->weights[static_cast<std::size_t>(pos)];
        const double wh = high.mst->weights[static_cast<std::size_t>(pos)];
        CHECK(wl >= 0.0);
        CHECK(wl <= 1.0);
        CHECK(wl <= wh + 1e-15);  // monotone in theta
    }
    const auto n_low = analytic_cut_probability(h, model(MarkerProcess::Uniform,
                                                         MeasureKind::Surface, 5));
    const auto n_high = analytic_cut_probability(h, model(MarkerProcess::Uniform,
                                                          MeasureKind::Surface, 50));
    for (std::size_t e = 0; e < n_low.size(); ++e)
        CHECK(n_low[e] <= n_high[e] + 1e-15);  // monotone in N
}

TEST_CASE("degenerate measures are rejected") {
    // All edge weights zero: the volume measure of every cluster is zero.
    auto rag = std::make_shared<Rag>(Rag::from_edges(3, {{0, 1, 0.0}, {1, 2, 0.0}}));
    const IndexedHierarchy h = build_dendrogram(minimum_spanning_tree(rag));
    CHECK_THROWS_AS(sws_reweight(h, model(MarkerProcess::Poisson, MeasureKind::Volume, 100)),
                    DegenerateMeasureError);
}

TEST_CASE("single-leaf hierarchies re-weight to themselves") {
    auto rag = std::make_shared<Rag>(Rag::from_edges(1, {}));
    const IndexedHierarchy h = build_dendrogram(minimum_spanning_tree(rag));
    const IndexedHierarchy r = sws_reweight(h, model(MarkerProcess::Poisson,
                                                     MeasureKind::Volume, 100));
    CHECK(r.n_nodes() == 1);
}
