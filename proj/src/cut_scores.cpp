#include "swseg/cut_scores.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace swseg {

namespace {

double threshold_value(const IndexedHierarchy& h, bool normalized, int levels, int j) {
    const double t = static_cast<double>(j) / static_cast<double>(levels - 1);
    const double scale = normalized ? 1.0 : h.max_altitude();
    return t * scale;
}

std::string threshold_param(int levels, int j) {
    return "t:" + format_double(static_cast<double>(j) / static_cast<double>(levels - 1));
}

// Clamp k to the leaf count: fine partitions with fewer regions than a grid
// entry saturate at the fine partition.
std::int32_t clamp_k(const IndexedHierarchy& h, std::int32_t k) {
    return std::min(k, h.n_leaves());
}

}  // namespace

Partition cut_on_grid(const IndexedHierarchy& h, bool normalized_altitudes, const CutGrid& grid,
                      std::size_t index) {
    grid.validate();
    if (grid.mode == CutGrid::Mode::Threshold) {
        Partition p = cut_at(h, threshold_value(h, normalized_altitudes, grid.levels,
                                                static_cast<int>(index)));
        p.cut_param = threshold_param(grid.levels, static_cast<int>(index));
        return p;
    }
    Partition p = cut_to_k(h, clamp_k(h, grid.counts[index]));
    p.cut_param = "k:" + std::to_string(grid.counts[index]);
    return p;
}

CutScores evaluate_cuts(const IndexedHierarchy& h, bool normalized_altitudes,
                        const CutGrid& grid, const ScoreConfig& cfg,
                        const JudgmentSet* judgments) {
    grid.validate();
    const std::int32_t n = h.n_leaves();
    const Rag& rag = *h.mst->rag;
    const std::size_t g = grid.size();

    CutScores out;
    out.score.assign(g, 0.0);
    out.cut_param.resize(g);
    for (std::size_t j = 0; j < g; ++j) {
        out.cut_param[j] = grid.mode == CutGrid::Mode::Threshold
                               ? threshold_param(grid.levels, static_cast<int>(j))
                               : "k:" + std::to_string(grid.counts[j]);
    }

    // Per grid index: number of merges applied (cut_at keeps altitudes <= λ,
    // cut_to_k keeps the first n-k merges).
    std::vector<std::int32_t> merges_applied(g, 0);
    {
        std::vector<double> altitudes;
        altitudes.reserve(static_cast<std::size_t>(std::max(0, n - 1)));
        for (std::int32_t k = n; k < h.n_nodes(); ++k)
            altitudes.push_back(h.nodes[static_cast<std::size_t>(k)].altitude);
        for (std::size_t j = 0; j < g; ++j) {
            if (grid.mode == CutGrid::Mode::Threshold) {
                const double lambda =
                    threshold_value(h, normalized_altitudes, grid.levels, static_cast<int>(j));
                merges_applied[j] = static_cast<std::int32_t>(
                    std::upper_bound(altitudes.begin(), altitudes.end(), lambda) -
                    altitudes.begin());
            } else {
                merges_applied[j] = n - clamp_k(h, grid.counts[j]);
            }
        }
    }

    if (cfg.kind == ScoreConfig::Kind::MumfordShah) {
        if (rag.grid == nullptr) throw DataError("Mumford-Shah scoring needs a pixel-backed graph");
        // Variance term: within-region sum of squared deviations. Along the
        // merge sequence it grows by the exact between-children term, so the
        // per-level sequence is non-decreasing by construction.
        std::vector<double> area(static_cast<std::size_t>(h.n_nodes()));
        std::vector<std::array<double, 3>> sums(static_cast<std::size_t>(h.n_nodes()),
                                                {0.0, 0.0, 0.0});
        double fine_variance = 0.0;
        for (std::int32_t i = 0; i < n; ++i) {
            const RagNode& node = rag.nodes[static_cast<std::size_t>(i)];
            area[static_cast<std::size_t>(i)] = static_cast<double>(node.area);
            for (int c = 0; c < rag.channels; ++c) {
                sums[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = node.sum[c];
                fine_variance +=
                    std::max(0.0, node.sumsq[c] - node.sum[c] * node.sum[c] /
                                                      static_cast<double>(node.area));
            }
        }
        std::vector<double> var_at(g, 0.0);
        {
            std::vector<double> merge_delta(static_cast<std::size_t>(std::max(0, n - 1)), 0.0);
            for (std::int32_t k = n; k < h.n_nodes(); ++k) {
                const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
                const double a1 = area[static_cast<std::size_t>(node.left)];
                const double a2 = area[static_cast<std::size_t>(node.right)];
                double delta = 0.0;
                for (int c = 0; c < rag.channels; ++c) {
                    const double m1 =
                        sums[static_cast<std::size_t>(node.left)][static_cast<std::size_t>(c)] / a1;
                    const double m2 =
                        sums[static_cast<std::size_t>(node.right)][static_cast<std::size_t>(c)] /
                        a2;
                    const double diff = m1 - m2;
                    delta += a1 * a2 / (a1 + a2) * diff * diff;
                    sums[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] =
                        sums[static_cast<std::size_t>(node.left)][static_cast<std::size_t>(c)] +
                        sums[static_cast<std::size_t>(node.right)][static_cast<std::size_t>(c)];
                }
                area[static_cast<std::size_t>(k)] = a1 + a2;
                merge_delta[static_cast<std::size_t>(k - n)] = delta;
            }
            std::vector<double> prefix(merge_delta.size() + 1, fine_variance);
            for (std::size_t i = 0; i < merge_delta.size(); ++i)
                prefix[i + 1] = prefix[i] + merge_delta[i];
            for (std::size_t j = 0; j < g; ++j)
                var_at[j] = prefix[static_cast<std::size_t>(merges_applied[j])];
        }

        // Contour term: a rag edge contributes its boundary length until the
        // merge that joins its two regions has been applied.
        std::vector<std::int64_t> contour_at(g, 0);
        {
            const LcaIndex lca(h);
            std::vector<std::pair<std::int32_t, std::int64_t>> by_merge;  // (merge order, blen)
            by_merge.reserve(rag.edges.size());
            for (const RagEdge& e : rag.edges)
                by_merge.emplace_back(lca.lca(e.p, e.q) - n, e.boundary_len);
            std::sort(by_merge.begin(), by_merge.end());
            std::vector<std::int64_t> suffix(by_merge.size() + 1, 0);
            for (std::size_t i = by_merge.size(); i-- > 0;)
                suffix[i] = suffix[i + 1] + by_merge[i].second;
            for (std::size_t j = 0; j < g; ++j) {
                // First edge whose joining merge has order >= merges_applied[j].
                const auto it = std::lower_bound(
                    by_merge.begin(), by_merge.end(),
                    std::make_pair(merges_applied[j], std::int64_t{0}),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
                contour_at[j] = suffix[static_cast<std::size_t>(it - by_merge.begin())];
            }
        }
        out.variance = var_at;
        out.contour = contour_at;
        for (std::size_t j = 0; j < g; ++j)
            out.score[j] = var_at[j] + cfg.ms_scale * static_cast<double>(contour_at[j]);
        return out;
    }

    // WHDR: region-mean luminance of the active ancestor of each judgment point.
    if (judgments == nullptr || judgments->comparisons.empty())
        throw DataError("WHDR scoring needs a judgment set");
    if (rag.grid == nullptr) throw DataError("WHDR scoring needs a pixel-backed graph");
    std::vector<double> area(static_cast<std::size_t>(h.n_nodes()), 0.0);
    std::vector<double> lum_sum(static_cast<std::size_t>(h.n_nodes()), 0.0);
    for (std::int32_t i = 0; i < n; ++i) {
        const RagNode& node = rag.nodes[static_cast<std::size_t>(i)];
        area[static_cast<std::size_t>(i)] = static_cast<double>(node.area);
        double s = 0.0;
        for (int c = 0; c < rag.channels; ++c) s += node.sum[c];
        lum_sum[static_cast<std::size_t>(i)] = s / rag.channels;
    }
    for (std::int32_t k = n; k < h.n_nodes(); ++k) {
        const DendNode& node = h.nodes[static_cast<std::size_t>(k)];
        area[static_cast<std::size_t>(k)] = area[static_cast<std::size_t>(node.left)] +
                                            area[static_cast<std::size_t>(node.right)];
        lum_sum[static_cast<std::size_t>(k)] = lum_sum[static_cast<std::size_t>(node.left)] +
                                               lum_sum[static_cast<std::size_t>(node.right)];
    }
    const LabelMap& fine = rag.grid->fine;
    // Ancestor chains per judgment point; node ids grow along each chain, so
    // the active ancestor under a cut is a binary search away.
    std::vector<std::vector<std::int32_t>> chains(judgments->points.size());
    for (std::size_t i = 0; i < judgments->points.size(); ++i) {
        const auto [x, y] = judgments->pixel_of(static_cast<std::int32_t>(i), fine.width,
                                                fine.height);
        std::int32_t node = fine.at(x, y);
        while (node != -1) {
            chains[i].push_back(node);
            node = h.nodes[static_cast<std::size_t>(node)].parent;
        }
    }
    double total_weight = 0.0;
    for (const Judgment& j : judgments->comparisons) total_weight += j.weight;
    if (!(total_weight > 0)) throw DataError("judgment set has zero total weight");

    for (std::size_t j = 0; j < g; ++j) {
        // Active ancestor: the highest chain node reached by the applied merges.
        const std::int32_t max_node = n + merges_applied[j] - 1;
        auto active = [&](std::int32_t point) {
            const auto& chain = chains[static_cast<std::size_t>(point)];
            const auto it = std::upper_bound(chain.begin(), chain.end(), max_node);
            return *(it - 1);
        };
        double disagree = 0.0;
        for (const Judgment& jd : judgments->comparisons) {
            const std::int32_t n1 = active(jd.p1);
            const std::int32_t n2 = active(jd.p2);
            const double m1 = lum_sum[static_cast<std::size_t>(n1)] /
                              area[static_cast<std::size_t>(n1)];
            const double m2 = lum_sum[static_cast<std::size_t>(n2)] /
                              area[static_cast<std::size_t>(n2)];
            if (whdr_answer(m1, m2, judgments->delta) != jd.darker) disagree += jd.weight;
        }
        out.score[j] = disagree / total_weight;
    }
    return out;
}

}  // namespace swseg
