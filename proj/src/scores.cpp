#include "swseg/scores.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "swseg/kernels.hpp"
#include "swseg/morphology.hpp"

namespace swseg {

MsTerms mumford_shah_terms(const Image& img, const LabelMap& seg) {
    if (img.width != seg.width || img.height != seg.height)
        throw DataError("image and segmentation dimensions must match");
    const std::int32_t n = seg.n_regions;
    std::vector<double> area(static_cast<std::size_t>(n), 0.0);
    std::vector<double> sum(static_cast<std::size_t>(n) * img.channels, 0.0);
    std::vector<double> sumsq(static_cast<std::size_t>(n) * img.channels, 0.0);
    for (std::size_t p = 0; p < seg.pixels(); ++p) {
        const auto label = static_cast<std::size_t>(seg.labels[p]);
        area[label] += 1.0;
        for (int c = 0; c < img.channels; ++c) {
            const double v = img.plane(c)[p];
            sum[label * img.channels + c] += v;
            sumsq[label * img.channels + c] += v * v;
        }
    }
    MsTerms terms;
    for (std::int32_t r = 0; r < n; ++r) {
        if (area[static_cast<std::size_t>(r)] == 0.0) continue;
        for (int c = 0; c < img.channels; ++c) {
            const double s = sum[static_cast<std::size_t>(r) * img.channels + c];
            const double ss = sumsq[static_cast<std::size_t>(r) * img.channels + c];
            terms.variance += std::max(0.0, ss - s * s / area[static_cast<std::size_t>(r)]);
        }
    }
    const auto& k = kernels::active();
    const int w = seg.width;
    for (int y = 0; y < seg.height; ++y) {
        const std::int32_t* row = seg.labels.data() + static_cast<std::size_t>(y) * w;
        if (w > 1)
            terms.contour += static_cast<std::int64_t>(
                k.count_diff_i32(row, row + 1, static_cast<std::size_t>(w - 1)));
        if (y + 1 < seg.height)
            terms.contour += static_cast<std::int64_t>(
                k.count_diff_i32(row, row + w, static_cast<std::size_t>(w)));
    }
    return terms;
}

double mumford_shah(const Image& img, const LabelMap& seg, const MsConfig& cfg) {
    if (!(cfg.scale > 0.0)) throw ConfigError("Mumford-Shah scale must be positive");
    const MsTerms terms = mumford_shah_terms(img, seg);
    return terms.variance + cfg.scale * static_cast<double>(terms.contour);
}

std::pair<int, int> JudgmentSet::pixel_of(std::int32_t point, int width, int height) const {
    const JudgmentPoint& pt = points[static_cast<std::size_t>(point)];
    int x = static_cast<int>(std::floor(pt.x_rel * width));
    int y = static_cast<int>(std::floor(pt.y_rel * height));
    x = std::clamp(x, 0, width - 1);
    y = std::clamp(y, 0, height - 1);
    return {x, y};
}

JudgmentSet load_judgments(const std::string& path, double delta) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("'" + path + "': " + e.what());
    }
    JudgmentSet set;
    set.delta = delta;
    std::unordered_map<std::string, std::int32_t> by_id;
    try {
        for (const auto& p : doc.at("points")) {
            JudgmentPoint pt;
            pt.id = p.at("id").is_string() ? p.at("id").get<std::string>()
                                           : p.at("id").dump();
            pt.x_rel = p.at("x_rel").get<double>();
            pt.y_rel = p.at("y_rel").get<double>();
            by_id[pt.id] = static_cast<std::int32_t>(set.points.size());
            set.points.push_back(std::move(pt));
        }
        for (const auto& c : doc.at("comparisons")) {
            Judgment j;
            auto resolve = [&](const nlohmann::json& v) {
                const std::string key = v.is_string() ? v.get<std::string>() : v.dump();
                const auto it = by_id.find(key);
                if (it == by_id.end())
                    throw DataError("'" + path + "': comparison references unknown point " + key);
                return it->second;
            };
            j.p1 = resolve(c.at("p1"));
            j.p2 = resolve(c.at("p2"));
            const std::string d = c.at("darker").get<std::string>();
            if (d != "1" && d != "2" && d != "E")
                throw DataError("'" + path + "': darker must be \"1\", \"2\" or \"E\"");
            j.darker = d[0];
            j.weight = c.at("weight").get<double>();
            if (!(j.weight > 0)) throw DataError("'" + path + "': weights must be positive");
            set.comparisons.push_back(j);
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("'" + path + "': " + e.what());
    }
    return set;
}

char whdr_answer(double r1, double r2, double delta) {
    // A region mean of exactly 0 counts as the darker side.
    if (r1 == 0.0 && r2 == 0.0) return 'E';
    if (r2 == 0.0) return '2';
    if (r1 == 0.0) return '1';
    if (r1 / r2 > 1.0 + delta) return '2';
    if (r2 / r1 > 1.0 + delta) return '1';
    return 'E';
}

double whdr(const Image& img, const LabelMap& seg, const JudgmentSet& judgments) {
    if (img.width != seg.width || img.height != seg.height)
        throw DataError("image and segmentation dimensions must match");
    if (judgments.comparisons.empty()) throw DataError("judgment set is empty");

    const ScalarField lum = luminance(img);
    std::vector<double> sum(static_cast<std::size_t>(seg.n_regions), 0.0);
    std::vector<double> area(static_cast<std::size_t>(seg.n_regions), 0.0);
    for (std::size_t p = 0; p < seg.pixels(); ++p) {
        const auto label = static_cast<std::size_t>(seg.labels[p]);
        sum[label] += lum.data[p];
        area[label] += 1.0;
    }

    double disagree = 0.0;
    double total = 0.0;
    for (const Judgment& j : judgments.comparisons) {
        const auto [x1, y1] = judgments.pixel_of(j.p1, img.width, img.height);
        const auto [x2, y2] = judgments.pixel_of(j.p2, img.width, img.height);
        const auto r1 = static_cast<std::size_t>(seg.at(x1, y1));
        const auto r2 = static_cast<std::size_t>(seg.at(x2, y2));
        const double m1 = sum[r1] / area[r1];
        const double m2 = sum[r2] / area[r2];
        if (whdr_answer(m1, m2, judgments.delta) != j.darker) disagree += j.weight;
        total += j.weight;
    }
    if (!(total > 0)) throw DataError("judgment set has zero total weight");
    return disagree / total;
}

}  // namespace swseg
