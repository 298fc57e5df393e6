#include "swseg/sws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace swseg {

namespace {

double resolve_theta(const MarkerModel& m, double total) {
    if (m.amount_is_rate) return m.amount;
    return m.amount / total;
}

void check_total(const MarkerModel& m, double total) {
    if (!(total > 0.0)) {
        throw DegenerateMeasureError(std::string("total ") + measure_kind_name(m.kind) +
                                     " measure is zero");
    }
}

std::int64_t uniform_count(const MarkerModel& m) {
    const auto n = static_cast<std::int64_t>(std::llround(m.amount));
    if (n < 1) throw ConfigError("uniform marker count must be >= 1");
    return n;
}

}  // namespace

std::string MarkerModel::describe() const {
    std::string name = measure_is_volume(kind) ? "svol" : "ssurf";
    if (measure_needs_erosion(kind)) name += "(erode=" + se->name() + ")";
    char buf[64];
    if (process == MarkerProcess::Poisson) {
        if (amount_is_rate)
            std::snprintf(buf, sizeof(buf), "@poisson(rate=%s)", format_double(amount).c_str());
        else
            std::snprintf(buf, sizeof(buf), "@poisson(%s)", format_double(amount).c_str());
    } else {
        std::snprintf(buf, sizeof(buf), "@uniform(%lld)",
                      static_cast<long long>(std::llround(amount)));
    }
    return name + buf;
}

std::vector<double> analytic_cut_probability(const IndexedHierarchy& h, const MarkerModel& m) {
    const std::int32_t n = h.n_leaves();
    std::vector<double> prob(static_cast<std::size_t>(h.mst->n_edges()), 0.0);
    if (n < 2) return prob;
    const NodeMeasures measures = cluster_measure(h, m.kind, m.se);
    check_total(m, measures.total);

    if (m.process == MarkerProcess::Poisson) {
        const double theta = resolve_theta(m, measures.total);
        for (std::int32_t k = n; k < h.n_nodes(); ++k) {
            const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
            const double m1 = measures.at_merge[static_cast<std::size_t>(node.left)];
            const double m2 = measures.at_merge[static_cast<std::size_t>(node.right)];
            const double p = (1.0 - std::exp(-theta * m1)) * (1.0 - std::exp(-theta * m2));
            prob[static_cast<std::size_t>(node.mst_pos)] = p;
        }
    } else {
        const auto count = static_cast<double>(uniform_count(m));
        for (std::int32_t k = n; k < h.n_nodes(); ++k) {
            const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
            const double a1 = measures.at_merge[static_cast<std::size_t>(node.left)] / measures.total;
            const double a2 = measures.at_merge[static_cast<std::size_t>(node.right)] / measures.total;
            double p = 1.0 - std::pow(1.0 - a1, count) - std::pow(1.0 - a2, count) +
                       std::pow(std::max(0.0, 1.0 - a1 - a2), count);
            p = std::clamp(p, 0.0, 1.0);
            prob[static_cast<std::size_t>(node.mst_pos)] = p;
        }
    }
    return prob;
}

IndexedHierarchy sws_reweight(const IndexedHierarchy& h, const MarkerModel& m,
                              std::string provenance) {
    if (provenance.empty()) provenance = m.describe() + "|" + h.provenance;
    auto mst = std::make_shared<Mst>();
    mst->rag = h.mst->rag;
    mst->edge_ids = h.mst->edge_ids;
    if (h.n_leaves() < 2) {
        return build_dendrogram(std::move(mst), std::move(provenance));
    }
    mst->weights = analytic_cut_probability(h, m);
    return build_dendrogram(std::move(mst), std::move(provenance));
}

std::vector<double> monte_carlo_cut_frequency(const IndexedHierarchy& h, const MarkerModel& m,
                                              std::int64_t trials, std::uint64_t seed,
                                              int workers) {
    if (trials < 1) throw ConfigError("trial count must be >= 1");
    const std::int32_t n = h.n_leaves();
    std::vector<double> freq(static_cast<std::size_t>(h.mst->n_edges()), 0.0);
    if (n < 2) return freq;

    const NodeMeasures measures = cluster_measure(h, m.kind, m.se);
    check_total(m, measures.total);
    const bool volume = measure_is_volume(m.kind);
    const double root_alt = h.nodes[static_cast<std::size_t>(h.root())].altitude;

    // Marker start nodes: surface kinds start at a leaf drawn by area (or, for
    // eroded kinds, at the lowest cluster the element still fits in, from a
    // uniform center); volume kinds add an activation height so a cluster only
    // counts once the flood has reached the marker.
    std::vector<double> cum;                 // cumulative sampling weights
    std::vector<std::int32_t> fit;           // pixel -> lowest fitting node
    std::vector<std::int32_t> domain_pixels; // eroded kinds: allowed centers
    if (measure_needs_erosion(m.kind)) {
        fit = erosion_fit_nodes(h, *m.se);
        const auto grid = h.mst->rag->grid;
        Mask full(grid->width, grid->height, 1);
        const Mask allowed = erode(full, *m.se);
        for (std::size_t p = 0; p < allowed.pixels(); ++p)
            if (allowed.data[p]) domain_pixels.push_back(static_cast<std::int32_t>(p));
        if (domain_pixels.empty())
            throw DegenerateMeasureError("structuring element does not fit in the image");
    } else {
        cum.resize(static_cast<std::size_t>(n));
        double running = 0.0;
        for (std::int32_t i = 0; i < n; ++i) {
            running += h.node_area[static_cast<std::size_t>(i)];
            cum[static_cast<std::size_t>(i)] = running;
        }
    }

    const double poisson_mean = m.process == MarkerProcess::Poisson
                                    ? resolve_theta(m, measures.total) * measures.total
                                    : 0.0;
    const std::int64_t fixed_count =
        m.process == MarkerProcess::Uniform ? uniform_count(m) : 0;

    const std::int64_t block_size = 2048;
    const std::int64_t n_blocks = (trials + block_size - 1) / block_size;
    std::vector<std::vector<std::int64_t>> block_counts(static_cast<std::size_t>(n_blocks));

    parallel_for(static_cast<std::size_t>(n_blocks), workers, [&](std::size_t block) {
        auto& counts = block_counts[block];
        counts.assign(static_cast<std::size_t>(h.mst->n_edges()), 0);
        const std::int64_t begin = static_cast<std::int64_t>(block) * block_size;
        const std::int64_t end = std::min<std::int64_t>(begin + block_size, trials);
        std::vector<std::uint8_t> occupied;
        std::vector<double> min_height;
        for (std::int64_t t = begin; t < end; ++t) {
            Rng rng(seed, static_cast<std::uint64_t>(t));
            const std::int64_t markers =
                m.process == MarkerProcess::Poisson
                    ? static_cast<std::int64_t>(rng.next_poisson(poisson_mean))
                    : fixed_count;
            if (volume)
                min_height.assign(static_cast<std::size_t>(h.n_nodes()),
                                  std::numeric_limits<double>::infinity());
            else
                occupied.assign(static_cast<std::size_t>(h.n_nodes()), 0);
            for (std::int64_t j = 0; j < markers; ++j) {
                std::int32_t start;
                if (measure_needs_erosion(m.kind)) {
                    const std::size_t pick = static_cast<std::size_t>(
                        rng.next_below(domain_pixels.size()));
                    start = fit[static_cast<std::size_t>(domain_pixels[pick])];
                } else {
                    const double u = rng.next_double() * cum.back();
                    start = static_cast<std::int32_t>(
                        std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
                    if (start >= n) start = n - 1;
                }
                const double height = volume ? rng.next_double() * root_alt : 0.0;
                if (start < 0) continue;  // element fits nowhere below the root
                if (volume) {
                    auto& slot = min_height[static_cast<std::size_t>(start)];
                    slot = std::min(slot, height);
                } else {
                    occupied[static_cast<std::size_t>(start)] = 1;
                }
            }
            for (std::int32_t k = n; k < h.n_nodes(); ++k) {
                const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
                if (volume) {
                    auto& mine = min_height[static_cast<std::size_t>(k)];
                    mine = std::min({mine, min_height[static_cast<std::size_t>(node.left)],
                                     min_height[static_cast<std::size_t>(node.right)]});
                } else {
                    occupied[static_cast<std::size_t>(k)] |=
                        occupied[static_cast<std::size_t>(node.left)] |
                        occupied[static_cast<std::size_t>(node.right)];
                }
            }
            for (std::int32_t k = n; k < h.n_nodes(); ++k) {
                const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
                bool cut;
                if (volume) {
                    cut = min_height[static_cast<std::size_t>(node.left)] < node.altitude &&
                          min_height[static_cast<std::size_t>(node.right)] < node.altitude;
                } else {
                    cut = occupied[static_cast<std::size_t>(node.left)] &&
                          occupied[static_cast<std::size_t>(node.right)];
                }
                if (cut) ++counts[static_cast<std::size_t>(node.mst_pos)];
            }
        }
    });

    std::vector<std::int64_t> totals(static_cast<std::size_t>(h.mst->n_edges()), 0);
    for (const auto& counts : block_counts)
        for (std::size_t e = 0; e < counts.size(); ++e) totals[e] += counts[e];
    for (std::size_t e = 0; e < totals.size(); ++e)
        freq[e] = static_cast<double>(totals[e]) / static_cast<double>(trials);
    return freq;
}

}  // namespace swseg
