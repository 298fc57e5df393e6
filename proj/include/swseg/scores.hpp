#pragma once

#include <string>
#include <vector>

#include "swseg/image.hpp"

namespace swseg {

struct MsConfig {
    double scale = 1.168;  // trade-off between data fidelity and simplification
};

/// Sum over regions of the total per-channel variance plus scale times the
/// contour length (4-adjacent pixel pairs with different labels).
double mumford_shah(const Image& img, const LabelMap& seg, const MsConfig& cfg);

/// The two terms separately; mumford_shah == variance + scale * contour.
struct MsTerms {
    double variance = 0.0;
    std::int64_t contour = 0;
};
MsTerms mumford_shah_terms(const Image& img, const LabelMap& seg);

/// Pairwise relative-reflectance judgment: which of two points is darker.
struct JudgmentPoint {
    std::string id;
    double x_rel = 0.0;  // relative coordinates in [0,1]
    double y_rel = 0.0;
};
struct Judgment {
    std::int32_t p1 = 0;  // indices into points
    std::int32_t p2 = 0;
    char darker = 'E';    // '1', '2' or 'E'
    double weight = 1.0;
};
struct JudgmentSet {
    std::vector<JudgmentPoint> points;
    std::vector<Judgment> comparisons;
    double delta = 0.10;  // equality tolerance on the luminance ratio

    std::pair<int, int> pixel_of(std::int32_t point, int width, int height) const;
};

/// JSON ingestion ({points: [{id,x_rel,y_rel}], comparisons: [{p1,p2,darker,weight}]}).
JudgmentSet load_judgments(const std::string& path, double delta = 0.10);

/// Weighted share of judgments the region-mean reflectance proxy disagrees
/// with; in [0,1], 0 meaning full agreement.
double whdr(const Image& img, const LabelMap& seg, const JudgmentSet& judgments);

/// The algorithm's answer for a pair of region-mean luminances.
char whdr_answer(double r1, double r2, double delta);

}  // namespace swseg
