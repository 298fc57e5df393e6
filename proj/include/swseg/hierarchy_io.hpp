#pragma once

#include <string>

#include "swseg/hierarchy.hpp"

namespace swseg {

/// Versioned binary container: leaf count, MST edges as (p, q, rag edge id,
/// weight) in merge order, dendrogram altitudes and the provenance string.
/// Round-trips altitudes, topology and provenance bit-exactly.
void save_hierarchy(const std::string& path, const IndexedHierarchy& h);

/// Loads a hierarchy. When `rag` is given the stored edges are re-attached to
/// it (counts and endpoints must match); otherwise a minimal abstract graph is
/// synthesized, which is enough for cuts and re-weighting with unit leaf areas.
IndexedHierarchy load_hierarchy(const std::string& path,
                                std::shared_ptr<const Rag> rag = nullptr);

/// Human-readable dump for debugging.
std::string dump_hierarchy(const IndexedHierarchy& h);

}  // namespace swseg
