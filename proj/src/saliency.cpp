#include "swseg/saliency.hpp"

#include <algorithm>
#include <fstream>

#include "swseg/image_io.hpp"

namespace swseg {

SaliencyImage render_saliency(const IndexedHierarchy& h, const LabelMap& fine) {
    const auto grid = h.mst->rag->grid;
    if (grid == nullptr || grid->width != fine.width || grid->height != fine.height ||
        h.n_leaves() != fine.n_regions) {
        throw DataError("hierarchy was not built over this fine partition");
    }
    const int w = fine.width;
    const int hgt = fine.height;
    SaliencyImage out;
    out.width = 2 * w + 1;
    out.height = 2 * hgt + 1;
    out.values.assign(static_cast<std::size_t>(out.width) * out.height, 0.0);

    const LcaIndex lca(h);
    auto pair_altitude = [&](std::int32_t a, std::int32_t b) {
        return h.nodes[static_cast<std::size_t>(lca.lca(a, b))].altitude;
    };
    for (int y = 0; y < hgt; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t here = fine.at(x, y);
            if (x + 1 < w && fine.at(x + 1, y) != here)
                out.at(2 * x + 2, 2 * y + 1) = pair_altitude(here, fine.at(x + 1, y));
            if (y + 1 < hgt && fine.at(x, y + 1) != here)
                out.at(2 * x + 1, 2 * y + 2) = pair_altitude(here, fine.at(x, y + 1));
        }
    }
    // Junction points carry the max of the incident boundary elements.
    for (int y = 0; y < out.height; y += 2) {
        for (int x = 0; x < out.width; x += 2) {
            double v = 0.0;
            if (x > 0) v = std::max(v, out.at(x - 1, y));
            if (x + 1 < out.width) v = std::max(v, out.at(x + 1, y));
            if (y > 0) v = std::max(v, out.at(x, y - 1));
            if (y + 1 < out.height) v = std::max(v, out.at(x, y + 1));
            out.at(x, y) = v;
        }
    }
    return out;
}

void write_saliency_png(const std::string& path, const SaliencyImage& saliency) {
    double max_value = 0.0;
    for (double v : saliency.values) max_value = std::max(max_value, v);
    const double scale = max_value > 0.0 ? 65535.0 / max_value : 0.0;
    std::vector<std::uint16_t> samples(saliency.values.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = static_cast<std::uint16_t>(saliency.values[i] * scale + 0.5);
    write_png16_gray(path, samples, saliency.width, saliency.height);
    std::ofstream sidecar(path + ".scale.txt");
    if (!sidecar) throw DataError("cannot write '" + path + ".scale.txt'");
    sidecar << "stored = round(saliency * scale)\n";
    sidecar << "scale = " << format_double(scale) << "\n";
    sidecar << "max_saliency = " << format_double(max_value) << "\n";
}

}  // namespace swseg
