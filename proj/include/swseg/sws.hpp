#pragma once

#include "swseg/measures.hpp"

namespace swseg {

enum class MarkerProcess { Poisson, Uniform };

/// Random marker distribution: a Poisson process with rate θ per unit measure,
/// or N markers drawn i.i.d. proportionally to the measure. By default the
/// Poisson rate is derived from an expected total marker count so that θ =
/// amount / total measure.
struct MarkerModel {
    MarkerProcess process = MarkerProcess::Poisson;
    double amount = 100.0;        // expected count (Poisson) or N (uniform)
    bool amount_is_rate = false;  // Poisson only: amount is θ itself
    MeasureKind kind = MeasureKind::Surface;
    std::optional<StructuringElement> se;  // present iff kind is eroded

    std::string describe() const;
};

/// Probability that each MST edge is cut by a random marker segmentation:
/// the two clusters merged by the edge must both receive a marker. Returned
/// per MST edge position. Closed forms:
///   poisson:   (1 - exp(-θ m1)) (1 - exp(-θ m2))
///   uniform-N: 1 - (1-a1)^N - (1-a2)^N + (1-a1-a2)^N,  ai = mi / total
std::vector<double> analytic_cut_probability(const IndexedHierarchy& h, const MarkerModel& m);

/// Same MST topology, edge weights replaced by the cut probabilities, and the
/// dendrogram rebuilt. All new altitudes lie in [0,1].
IndexedHierarchy sws_reweight(const IndexedHierarchy& h, const MarkerModel& m,
                              std::string provenance = "");

/// Empirical per-edge cut frequency over `trials` random marker draws, each
/// scored by the minimum-spanning-forest criterion. Trial t uses the RNG
/// stream (seed, t), so results do not depend on the worker count.
std::vector<double> monte_carlo_cut_frequency(const IndexedHierarchy& h, const MarkerModel& m,
                                              std::int64_t trials, std::uint64_t seed,
                                              int workers = 1);

}  // namespace swseg
