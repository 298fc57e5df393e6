#include "swseg/morphology.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

#include "swseg/kernels.hpp"

namespace swseg {

namespace {

// Largest |dx| such that (dx, dy) is still inside a disk of radius r.
int disk_halfwidth(int r, int dy) {
    int wx = 0;
    while ((wx + 1) * (wx + 1) + dy * dy <= r * r) ++wx;
    return wx;
}

}  // namespace

ScalarField luminance(const Image& img) {
    if (img.width < 1 || img.height < 1) throw DataError("empty image");
    ScalarField out(img.width, img.height);
    if (img.channels == 1) {
        std::copy(img.plane(0), img.plane(0) + img.pixels(), out.data.begin());
    } else {
        kernels::active().mean3_f32(img.plane(0), img.plane(1), img.plane(2), img.pixels(),
                                    out.data.data());
    }
    return out;
}

ScalarField morphological_gradient(const Image& img, int radius) {
    if (img.width < 1 || img.height < 1) throw DataError("empty image");
    if (radius < 1) throw ConfigError("gradient radius must be >= 1");
    const auto& k = kernels::active();
    const ScalarField lum = luminance(img);
    const int w = img.width;
    const int h = img.height;

    ScalarField dil(w, h, -std::numeric_limits<float>::infinity());
    ScalarField ero(w, h, std::numeric_limits<float>::infinity());
    std::vector<float> tmp(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        float* drow = dil.data.data() + static_cast<std::size_t>(y) * w;
        float* erow = ero.data.data() + static_cast<std::size_t>(y) * w;
        for (int dy = -radius; dy <= radius; ++dy) {
            const int sy = y + dy;
            if (sy < 0 || sy >= h) continue;  // disk clipped at the border
            const float* srow = lum.data.data() + static_cast<std::size_t>(sy) * w;
            const int wx = disk_halfwidth(radius, dy);
            k.window_max_f32(srow, static_cast<std::size_t>(w), wx, wx, tmp.data());
            k.acc_max_f32(drow, tmp.data(), static_cast<std::size_t>(w));
            k.window_min_f32(srow, static_cast<std::size_t>(w), wx, wx, tmp.data());
            k.acc_min_f32(erow, tmp.data(), static_cast<std::size_t>(w));
        }
    }
    ScalarField grad(w, h);
    k.sub_f32(dil.data.data(), ero.data.data(), grad.pixels(), grad.data.data());
    return grad;
}

Mask erode_sweep(const Mask& mask, const StructuringElement& se) {
    const auto& k = kernels::active();
    const int w = mask.width;
    const int h = mask.height;
    Mask out(w, h, 1);
    std::vector<std::uint8_t> tmp(static_cast<std::size_t>(w));

    int dy_lo = 0, dy_hi = 0;
    switch (se.shape) {
        case StructuringElement::Shape::Disk:
            dy_lo = -se.size;
            dy_hi = se.size;
            break;
        case StructuringElement::Shape::HSeg:
            dy_lo = dy_hi = 0;
            break;
        case StructuringElement::Shape::VSeg:
            dy_lo = -(se.size / 2);
            dy_hi = se.size - 1 - se.size / 2;
            break;
    }
    for (int y = 0; y < h; ++y) {
        std::uint8_t* orow = out.data.data() + static_cast<std::size_t>(y) * w;
        for (int dy = dy_lo; dy <= dy_hi; ++dy) {
            const int sy = y + dy;
            if (sy < 0 || sy >= h) {
                std::memset(orow, 0, static_cast<std::size_t>(w));  // element leaves the image
                break;
            }
            const std::uint8_t* srow = mask.data.data() + static_cast<std::size_t>(sy) * w;
            int left = 0, right = 0;
            if (se.shape == StructuringElement::Shape::Disk) {
                left = right = disk_halfwidth(se.size, dy);
            } else if (se.shape == StructuringElement::Shape::HSeg) {
                left = se.size / 2;
                right = se.size - 1 - left;
            }
            if (left == 0 && right == 0) {
                k.acc_and_u8(orow, srow, static_cast<std::size_t>(w));
            } else {
                k.window_all_u8(srow, static_cast<std::size_t>(w), left, right, tmp.data());
                k.acc_and_u8(orow, tmp.data(), static_cast<std::size_t>(w));
            }
        }
    }
    return out;
}

Mask erode(const Mask& mask, const StructuringElement& se) {
    const int w = mask.width;
    const int h = mask.height;
    Mask out(w, h, 0);
    switch (se.shape) {
        case StructuringElement::Shape::Disk: {
            const auto dt = squared_distance_transform(mask);
            const std::int64_t rr = static_cast<std::int64_t>(se.size) * se.size;
            for (std::size_t i = 0; i < mask.pixels(); ++i) out.data[i] = dt[i] > rr ? 1 : 0;
            break;
        }
        case StructuringElement::Shape::HSeg: {
            const int c = se.size / 2;
            for (int y = 0; y < h; ++y) {
                const std::uint8_t* row = mask.data.data() + static_cast<std::size_t>(y) * w;
                std::uint8_t* orow = out.data.data() + static_cast<std::size_t>(y) * w;
                int run = 0;  // consecutive foreground ending at x
                for (int x = 0; x < w; ++x) {
                    run = row[x] ? run + 1 : 0;
                    const int center = x - (se.size - 1 - c);
                    if (run >= se.size && center >= 0) orow[center] = 1;
                }
            }
            break;
        }
        case StructuringElement::Shape::VSeg: {
            const int c = se.size / 2;
            std::vector<int> run(static_cast<std::size_t>(w), 0);
            for (int y = 0; y < h; ++y) {
                const std::uint8_t* row = mask.data.data() + static_cast<std::size_t>(y) * w;
                const int center_y = y - (se.size - 1 - c);
                std::uint8_t* orow =
                    center_y >= 0 ? out.data.data() + static_cast<std::size_t>(center_y) * w
                                  : nullptr;
                for (int x = 0; x < w; ++x) {
                    run[x] = row[x] ? run[x] + 1 : 0;
                    if (orow != nullptr && run[x] >= se.size) orow[x] = 1;
                }
            }
            break;
        }
    }
    return out;
}

std::uint64_t eroded_area(const Mask& mask, const StructuringElement& se) {
    const Mask eroded = erode(mask, se);
    return kernels::active().count_nonzero_u8(eroded.data.data(), eroded.pixels());
}

std::uint64_t area(const Mask& mask) {
    return kernels::active().count_nonzero_u8(mask.data.data(), mask.pixels());
}

std::vector<std::int32_t> squared_distance_transform(const Mask& mask) {
    const int w = mask.width;
    const int h = mask.height;
    // Column pass: vertical distance to the nearest background, with virtual
    // background rows just above and below the image.
    std::vector<std::int32_t> g(mask.pixels());
    for (int x = 0; x < w; ++x) {
        int d = 1;
        for (int y = 0; y < h; ++y) {
            d = mask.at(x, y) ? d : 0;
            g[static_cast<std::size_t>(y) * w + x] = d;
            ++d;
        }
        d = 1;
        for (int y = h - 1; y >= 0; --y) {
            d = mask.at(x, y) ? d : 0;
            auto& cell = g[static_cast<std::size_t>(y) * w + x];
            cell = std::min(cell, d);
            ++d;
        }
    }

    // Row pass: lower envelope of the parabolas i -> (x-i)^2 + g(i)^2,
    // plus the virtual background columns at i = -1 and i = w.
    std::vector<std::int32_t> dt(mask.pixels());
    std::vector<int> v(static_cast<std::size_t>(w));
    std::vector<double> z(static_cast<std::size_t>(w) + 1);
    for (int y = 0; y < h; ++y) {
        const std::int32_t* grow = g.data() + static_cast<std::size_t>(y) * w;
        std::int32_t* drow = dt.data() + static_cast<std::size_t>(y) * w;
        auto f = [&](int i) { return static_cast<std::int64_t>(grow[i]) * grow[i]; };
        int k = 0;
        v[0] = 0;
        z[0] = -std::numeric_limits<double>::infinity();
        z[1] = std::numeric_limits<double>::infinity();
        for (int q = 1; q < w; ++q) {
            double s;
            for (;;) {
                const int p = v[static_cast<std::size_t>(k)];
                s = (static_cast<double>(f(q) - f(p)) +
                     static_cast<double>(static_cast<std::int64_t>(q) * q -
                                         static_cast<std::int64_t>(p) * p)) /
                    (2.0 * (q - p));
                if (s > z[static_cast<std::size_t>(k)] || k == 0) break;
                --k;
            }
            ++k;
            v[static_cast<std::size_t>(k)] = q;
            z[static_cast<std::size_t>(k)] = s;
            z[static_cast<std::size_t>(k) + 1] = std::numeric_limits<double>::infinity();
        }
        k = 0;
        for (int x = 0; x < w; ++x) {
            while (z[static_cast<std::size_t>(k) + 1] < x) ++k;
            const int p = v[static_cast<std::size_t>(k)];
            std::int64_t best = static_cast<std::int64_t>(x - p) * (x - p) + f(p);
            best = std::min(best, static_cast<std::int64_t>(x + 1) * (x + 1));
            best = std::min(best, static_cast<std::int64_t>(w - x) * (w - x));
            drow[x] = static_cast<std::int32_t>(best);
        }
    }
    return dt;
}

}  // namespace swseg
