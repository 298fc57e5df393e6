#pragma once

#include "swseg/hierarchy.hpp"
#include "swseg/scores.hpp"

namespace swseg {

/// Shared cut-level grid applied to every (image, hierarchy) pair. Threshold
/// mode places `levels` evenly spaced values on the normalized altitude range
/// [0,1]; re-weighted hierarchies already live there, raw gradient hierarchies
/// are scaled by their maximum altitude.
struct CutGrid {
    enum class Mode { Threshold, RegionCount };
    Mode mode = Mode::Threshold;
    int levels = 64;
    std::vector<std::int32_t> counts;

    std::size_t size() const {
        return mode == Mode::Threshold ? static_cast<std::size_t>(levels) : counts.size();
    }
    void validate() const {
        if (mode == Mode::Threshold) {
            if (levels < 2) throw ConfigError("threshold grid needs at least 2 levels");
        } else {
            if (counts.empty()) throw ConfigError("region-count grid is empty");
            for (std::int32_t k : counts)
                if (k < 1) throw ConfigError("region counts must be >= 1");
        }
    }
};

struct ScoreConfig {
    enum class Kind { MumfordShah, Whdr };
    Kind kind = Kind::MumfordShah;
    double ms_scale = 1.168;
    double whdr_delta = 0.10;
};

/// Scores of every grid cut of one hierarchy, computed incrementally along the
/// merge sequence instead of re-labeling pixels per level.
struct CutScores {
    std::vector<double> score;           // per grid index
    std::vector<std::string> cut_param;  // "t:0.25" or "k:3" per grid index
    // Mumford-Shah terms, exposed separately (variance grows and contour
    // shrinks towards coarser cuts).
    std::vector<double> variance;
    std::vector<std::int64_t> contour;
};

CutScores evaluate_cuts(const IndexedHierarchy& h, bool normalized_altitudes,
                        const CutGrid& grid, const ScoreConfig& cfg,
                        const JudgmentSet* judgments = nullptr);

/// Materializes one grid cut as a partition (same semantics the score table uses).
Partition cut_on_grid(const IndexedHierarchy& h, bool normalized_altitudes, const CutGrid& grid,
                      std::size_t index);

}  // namespace swseg
