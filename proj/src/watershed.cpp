#include "swseg/watershed.hpp"

#include <queue>

namespace swseg {

namespace {

// Fixed neighbor order (N, W, E, S); part of the deterministic flooding contract.
struct NeighborIter {
    int w, h;
    void for_each(std::int32_t p, auto&& fn) const {
        const int x = p % w;
        const int y = p / w;
        if (y > 0) fn(p - w);
        if (x > 0) fn(p - 1);
        if (x + 1 < w) fn(p + 1);
        if (y + 1 < h) fn(p + w);
    }
};

}  // namespace

std::vector<std::int32_t> regional_minima(const ScalarField& relief, int* n_minima) {
    if (relief.width < 1 || relief.height < 1) throw DataError("empty relief");
    const NeighborIter nb{relief.width, relief.height};
    const std::size_t n = relief.pixels();
    std::vector<std::int32_t> out(n, -1);
    std::vector<std::int32_t> plateau;
    std::vector<std::int32_t> stack;
    std::vector<std::uint8_t> seen(n, 0);
    std::int32_t next_id = 0;

    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        const float value = relief.data[start];
        bool is_minimum = true;
        plateau.clear();
        stack.push_back(static_cast<std::int32_t>(start));
        seen[start] = 1;
        while (!stack.empty()) {
            const std::int32_t p = stack.back();
            stack.pop_back();
            plateau.push_back(p);
            nb.for_each(p, [&](std::int32_t q) {
                const float vq = relief.data[static_cast<std::size_t>(q)];
                if (vq == value) {
                    if (!seen[q]) {
                        seen[q] = 1;
                        stack.push_back(q);
                    }
                } else if (vq < value) {
                    is_minimum = false;
                }
            });
        }
        if (is_minimum) {
            for (std::int32_t p : plateau) out[static_cast<std::size_t>(p)] = next_id;
            ++next_id;
        }
    }
    if (n_minima != nullptr) *n_minima = next_id;
    return out;
}

LabelMap watershed_fine_partition(const ScalarField& relief) {
    const int w = relief.width;
    const int h = relief.height;
    int n_minima = 0;
    std::vector<std::int32_t> labels = regional_minima(relief, &n_minima);
    const NeighborIter nb{w, h};

    struct Entry {
        float value;
        std::uint64_t seq;
        std::int32_t pixel;
        std::int32_t claim;
        bool operator>(const Entry& other) const {
            if (value != other.value) return value > other.value;
            return seq > other.seq;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    std::uint64_t seq = 0;

    for (std::size_t p = 0; p < relief.pixels(); ++p) {
        if (labels[p] < 0) continue;
        nb.for_each(static_cast<std::int32_t>(p), [&](std::int32_t q) {
            if (labels[static_cast<std::size_t>(q)] < 0)
                queue.push({relief.data[static_cast<std::size_t>(q)], seq++, q, labels[p]});
        });
    }
    while (!queue.empty()) {
        const Entry e = queue.top();
        queue.pop();
        if (labels[static_cast<std::size_t>(e.pixel)] >= 0) continue;
        labels[static_cast<std::size_t>(e.pixel)] = e.claim;
        nb.for_each(e.pixel, [&](std::int32_t q) {
            if (labels[static_cast<std::size_t>(q)] < 0)
                queue.push({relief.data[static_cast<std::size_t>(q)], seq++, q, e.claim});
        });
    }

    LabelMap out(w, h);
    out.n_regions = n_minima;
    out.labels = std::move(labels);
    return out;
}

}  // namespace swseg
