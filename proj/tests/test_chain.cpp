#include <doctest.h>

#include <set>

#include "swseg/chain.hpp"
#include "swseg/hierarchy_io.hpp"

using namespace swseg;

namespace {

ImageContext random_context(Rng& rng, int w = 20, int h = 16) {
    Image img(w, h, 1);
    for (auto& v : img.data) v = static_cast<float>(rng.next_double());
    return make_image_context(std::move(img));
}

}  // namespace

TEST_CASE("spec grammar parses and canonicalizes") {
    const MarkerDefaults defaults;
    CHECK(HierarchySpec::parse("grad").canonical() == "grad");
    CHECK(HierarchySpec::parse("grad").depth() == 0);

    const HierarchySpec one = HierarchySpec::parse("ssurf@poisson(100)|grad");
    CHECK(one.depth() == 1);
    CHECK(one.canonical() == "ssurf@poisson(100)|grad");
    CHECK(one.chain[0].model.kind == MeasureKind::Surface);

    // Unannotated operators pick up the defaults; canonical names pin them.
    const HierarchySpec sugar = HierarchySpec::parse("ssurf|grad", defaults);
    CHECK(sugar.canonical() == "ssurf@poisson(100)|grad");

    const HierarchySpec two = HierarchySpec::parse("svol(erode=vseg:15)|ssurf|grad");
    CHECK(two.depth() == 2);
    CHECK(two.chain[0].model.kind == MeasureKind::Surface);       // applied first
    CHECK(two.chain[1].model.kind == MeasureKind::ErodedVolume);  // applied second
    CHECK(two.chain[1].model.se->name() == "vseg:15");
    CHECK(two.canonical() == "svol(erode=vseg:15)@poisson(100)|ssurf@poisson(100)|grad");
    CHECK(HierarchySpec::parse(two.canonical()).canonical() == two.canonical());

    const HierarchySpec uni = HierarchySpec::parse("svol@uniform(50)|grad");
    CHECK(uni.chain[0].model.process == MarkerProcess::Uniform);
    CHECK(uni.chain[0].model.amount == 50.0);

    const HierarchySpec rate = HierarchySpec::parse("ssurf@poisson(rate=0.25)|grad");
    CHECK(rate.chain[0].model.amount_is_rate);
    CHECK(rate.chain[0].model.amount == 0.25);
}

TEST_CASE("bad spec strings are rejected") {
    CHECK_THROWS_AS(HierarchySpec::parse(""), ConfigError);
    CHECK_THROWS_AS(HierarchySpec::parse("ssurf"), ConfigError);  // missing base
    CHECK_THROWS_AS(HierarchySpec::parse("ssurf|ssurf|ssurf|grad"), ConfigError);  // depth 3
    CHECK_THROWS_AS(HierarchySpec::parse("sfoo|grad"), ConfigError);
    CHECK_THROWS_AS(HierarchySpec::parse("ssurf(erode=)|grad"), ConfigError);
    CHECK_THROWS_AS(HierarchySpec::parse("ssurf@gamma(3)|grad"), ConfigError);
    CHECK_THROWS_AS(HierarchySpec::parse("ssurf@poisson(-1)|grad"), ConfigError);
    CHECK_THROWS_AS(HierarchySpec::parse("svol@uniform(rate=2)|grad"), ConfigError);
}

TEST_CASE("enumeration counts: 1 + k + k^2") {
    // Four abstract operators -> 21 specs.
    std::vector<SwsOperator> four(4);
    four[0].model.kind = MeasureKind::Surface;
    four[1].model.kind = MeasureKind::Volume;
    four[2].model.kind = MeasureKind::ErodedSurface;
    four[2].model.se = StructuringElement::disk(2);
    four[3].model.kind = MeasureKind::ErodedVolume;
    four[3].model.se = StructuringElement::hseg(3);
    CHECK(enumerate_specs(four).size() == 21);

    CHECK(enumerate_specs({}).size() == 1);  // base hierarchy only

    // The experiment catalog: surface, volume, and both eroded kinds per
    // element -> 8 operators -> 73 specs.
    const auto ops = default_operator_set(
        {StructuringElement::disk(4), StructuringElement::hseg(4), StructuringElement::vseg(15)});
    CHECK(ops.size() == 8);
    const auto specs = enumerate_specs(ops);
    CHECK(specs.size() == 73);
    // Canonical names are unique and deterministic.
    std::set<std::string> names;
    for (const auto& s : specs) names.insert(s.canonical());
    CHECK(names.size() == 73);
    CHECK(specs[0].canonical() == "grad");
}

TEST_CASE("empty chain returns the base hierarchy unchanged") {
    Rng rng(91);
    const ImageContext ctx = random_context(rng);
    const IndexedHierarchy base = build_dendrogram(ctx.mst, "grad");
    const IndexedHierarchy composed = compose_chain(ctx, HierarchySpec{});
    CHECK(dump_hierarchy(base) == dump_hierarchy(composed));
    CHECK(composed.provenance == "grad");
}

TEST_CASE("a two-operator chain is exactly the stepwise re-weighting") {
    Rng rng(92);
    const ImageContext ctx = random_context(rng);
    const HierarchySpec spec = HierarchySpec::parse("svol|ssurf|grad");

    const IndexedHierarchy chained = compose_chain(ctx, spec);
    CHECK(chained.provenance == spec.canonical());

    IndexedHierarchy stepwise = build_dendrogram(ctx.mst, "grad");
    stepwise = sws_reweight(stepwise, spec.chain[0].model);
    stepwise = sws_reweight(stepwise, spec.chain[1].model);
    CHECK(chained.mst->weights == stepwise.mst->weights);
    for (std::int32_t k = 0; k < chained.n_nodes(); ++k) {
        CHECK(chained.nodes[static_cast<std::size_t>(k)].left ==
              stepwise.nodes[static_cast<std::size_t>(k)].left);
        CHECK(chained.nodes[static_cast<std::size_t>(k)].altitude ==
              stepwise.nodes[static_cast<std::size_t>(k)].altitude);
    }
}

TEST_CASE("surface re-weighting demotes small contrasted regions") {
    // A small bright square on a dark background with a mild long edge: under
    // the gradient the small square is the most salient contour; under the
    // surface-driven re-weighting its tiny area pulls its cut probability
    // below that of the large-vs-large split.
    Image img(24, 24, 1, 0.1f);
    for (int y = 0; y < 24; ++y)
        for (int x = 12; x < 24; ++x) img.at(0, x, y) = 0.35f;  // two big halves
    for (int y = 4; y < 7; ++y)
        for (int x = 4; x < 7; ++x) img.at(0, x, y) = 1.0f;  // small, high contrast
    const ImageContext ctx = make_image_context(img);
    const IndexedHierarchy base = build_dendrogram(ctx.mst, "grad");
    const IndexedHierarchy surf =
        compose_chain(ctx, HierarchySpec::parse("ssurf@uniform(64)|grad"));

    auto small_square_leaf = [&](const IndexedHierarchy&) {
        return ctx.fine.at(5, 5);
    };
    auto half_leaf_left = [&]() { return ctx.fine.at(2, 18); };
    auto half_leaf_right = [&]() { return ctx.fine.at(21, 18); };

    const double base_small = lca_altitude(base, small_square_leaf(base), half_leaf_left());
    const double base_halves = lca_altitude(base, half_leaf_left(), half_leaf_right());
    CHECK(base_small > base_halves);  // gradient favors the contrasted square

    const double surf_small = lca_altitude(surf, small_square_leaf(surf), half_leaf_left());
    const double surf_halves = lca_altitude(surf, half_leaf_left(), half_leaf_right());
    CHECK(surf_halves > surf_small);  // surface re-weighting favors the big split
}
