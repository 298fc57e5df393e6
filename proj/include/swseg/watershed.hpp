#pragma once

#include "swseg/image.hpp"

namespace swseg {

/// Flooding watershed on a 4-connected grid. One basin per regional minimum
/// (an equal-valued plateau with no strictly lower neighbor); every pixel ends
/// up in exactly one basin, so separating lines live between pixels. Contested
/// plateau pixels go to the flood front that queued them first; basin ids
/// follow the row-major order of the minima.
LabelMap watershed_fine_partition(const ScalarField& relief);

/// Regional-minima labeling used by the watershed: -1 for non-minimum pixels,
/// otherwise the basin id. Exposed for tests and diagnostics.
std::vector<std::int32_t> regional_minima(const ScalarField& relief, int* n_minima = nullptr);

}  // namespace swseg
