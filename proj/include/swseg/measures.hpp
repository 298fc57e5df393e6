#pragma once

#include <optional>

#include "swseg/hierarchy.hpp"
#include "swseg/morphology.hpp"

namespace swseg {

/// Cluster measure driving the marker distributions. Surface is the pixel
/// area; volume is the lake volume accumulated between a cluster's formation
/// and its merge level; the eroded variants keep only what survives erosion
/// with a structuring element (volume scaled by the eroded/total area ratio).
enum class MeasureKind { Surface, Volume, ErodedSurface, ErodedVolume };

inline bool measure_needs_erosion(MeasureKind k) {
    return k == MeasureKind::ErodedSurface || k == MeasureKind::ErodedVolume;
}
inline bool measure_is_volume(MeasureKind k) {
    return k == MeasureKind::Volume || k == MeasureKind::ErodedVolume;
}

const char* measure_kind_name(MeasureKind k);

struct NodeMeasures {
    /// Per dendrogram node: measure evaluated at the node's merge into its
    /// parent (the root at its own altitude).
    std::vector<double> at_merge;
    /// Measure of the whole domain at the root altitude: the marker-space mass
    /// used for intensity defaults and uniform normalization.
    double total = 0.0;
};

/// se must be present exactly for the eroded kinds; eroded kinds require a
/// hierarchy with pixel backing.
NodeMeasures cluster_measure(const IndexedHierarchy& h, MeasureKind kind,
                             const std::optional<StructuringElement>& se = std::nullopt);

/// Exact per-node eroded areas, recomputed from each cluster's materialized
/// mask (clusters are unions of fine regions, so erosion is not additive).
std::vector<double> eroded_node_areas(const IndexedHierarchy& h, const StructuringElement& se);

/// For every pixel, the lowest dendrogram node whose mask still contains the
/// element centered there (-1 if none up to the root). A marker centered at p
/// occupies exactly the ancestors of fit_node(p); drives the Monte Carlo
/// verification of the eroded kinds.
std::vector<std::int32_t> erosion_fit_nodes(const IndexedHierarchy& h,
                                            const StructuringElement& se);

}  // namespace swseg
