#include "swseg/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <memory>

namespace swseg {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f != nullptr) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw DataError("cannot open '" + path + "'");
    return f;
}

// Decoded integer raster, before any normalization.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 0;
    int maxval = 0;
    std::vector<std::uint32_t> samples;  // channel-interleaved
};

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    throw DataError(std::string("png: ") + msg);
    (void)png;
}
void png_warn_fn(png_structp, png_const_charp) {}

Raster read_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    png_byte header[8];
    if (std::fread(header, 1, 8, f.get()) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw DataError("'" + path + "' is not a PNG file");

    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (png == nullptr) throw DataError("png reader allocation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DataError("png reader allocation failed");
    }
    Raster out;
    try {
        png_init_io(png, f.get());
        png_set_sig_bytes(png, 8);
        png_read_info(png, info);

        png_set_expand(png);        // palette -> rgb, gray<8 -> 8, tRNS -> alpha
        png_set_strip_alpha(png);
        if (png_get_bit_depth(png, info) == 16) png_set_swap(png);  // host little-endian
        png_read_update_info(png, info);

        const int w = static_cast<int>(png_get_image_width(png, info));
        const int h = static_cast<int>(png_get_image_height(png, info));
        const int depth = png_get_bit_depth(png, info);
        const int ch = static_cast<int>(png_get_channels(png, info));
        if (w < 1 || h < 1) throw DataError("'" + path + "': empty image");
        if (ch != 1 && ch != 3) throw DataError("'" + path + "': unsupported channel count");

        std::vector<png_byte> rowbuf(png_get_rowbytes(png, info));
        out.width = w;
        out.height = h;
        out.channels = ch;
        out.maxval = depth == 16 ? 65535 : 255;
        out.samples.resize(static_cast<std::size_t>(w) * h * ch);
        for (int y = 0; y < h; ++y) {
            png_read_row(png, rowbuf.data(), nullptr);
            std::uint32_t* dst = out.samples.data() + static_cast<std::size_t>(y) * w * ch;
            if (depth == 16) {
                const auto* src = reinterpret_cast<const std::uint16_t*>(rowbuf.data());
                for (int i = 0; i < w * ch; ++i) dst[i] = src[i];
            } else {
                for (int i = 0; i < w * ch; ++i) dst[i] = rowbuf[static_cast<std::size_t>(i)];
            }
        }
        png_read_end(png, nullptr);
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

int pnm_next_int(std::FILE* f, const std::string& path) {
    int c;
    for (;;) {
        c = std::fgetc(f);
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        } else if (c != EOF && !std::isspace(c)) {
            break;
        } else if (c == EOF) {
            throw DataError("'" + path + "': truncated PNM header");
        }
    }
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = std::fgetc(f);
    }
    return value;
}

Raster read_pnm(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    char m0 = static_cast<char>(std::fgetc(f.get()));
    char m1 = static_cast<char>(std::fgetc(f.get()));
    if (m0 != 'P' || (m1 != '2' && m1 != '3' && m1 != '5' && m1 != '6'))
        throw DataError("'" + path + "' is not a supported PNM file");
    const bool binary = m1 == '5' || m1 == '6';
    const int channels = (m1 == '3' || m1 == '6') ? 3 : 1;

    Raster out;
    out.width = pnm_next_int(f.get(), path);
    out.height = pnm_next_int(f.get(), path);
    out.maxval = pnm_next_int(f.get(), path);
    out.channels = channels;
    if (out.width < 1 || out.height < 1 || out.maxval < 1 || out.maxval > 65535)
        throw DataError("'" + path + "': bad PNM header");
    const std::size_t count = static_cast<std::size_t>(out.width) * out.height * channels;
    out.samples.resize(count);
    if (binary) {
        // Header ends with exactly one whitespace byte, already consumed by
        // pnm_next_int reading past the last digit.
        const int bytes = out.maxval > 255 ? 2 : 1;
        std::vector<std::uint8_t> buf(count * static_cast<std::size_t>(bytes));
        if (std::fread(buf.data(), 1, buf.size(), f.get()) != buf.size())
            throw DataError("'" + path + "': truncated PNM data");
        for (std::size_t i = 0; i < count; ++i) {
            out.samples[i] = bytes == 2
                                 ? (static_cast<std::uint32_t>(buf[2 * i]) << 8) | buf[2 * i + 1]
                                 : buf[i];
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            out.samples[i] = static_cast<std::uint32_t>(pnm_next_int(f.get(), path));
    }
    return out;
}

bool is_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    unsigned char sig[8] = {0};
    std::size_t got = std::fread(sig, 1, 8, f.get());
    return got == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

Raster read_raster(const std::string& path) {
    return is_png(path) ? read_png(path) : read_pnm(path);
}

void write_png(const std::string& path, const std::uint16_t* samples, int width, int height,
               int channels) {
    FilePtr f = open_file(path, "wb");
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_fn, png_warn_fn);
    if (png == nullptr) throw DataError("png writer allocation failed");
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw DataError("png writer allocation failed");
    }
    try {
        png_init_io(png, f.get());
        png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                     static_cast<png_uint_32>(height), 16,
                     channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        png_set_swap(png);
        std::vector<png_byte> row(static_cast<std::size_t>(width) * channels * 2);
        for (int y = 0; y < height; ++y) {
            std::memcpy(row.data(), samples + static_cast<std::size_t>(y) * width * channels,
                        row.size());
            png_write_row(png, row.data());
        }
        png_write_end(png, info);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
}

}  // namespace

Image read_image(const std::string& path) {
    const Raster r = read_raster(path);
    Image img(r.width, r.height, r.channels);
    const float scale = 1.0f / static_cast<float>(r.maxval);
    for (int c = 0; c < r.channels; ++c) {
        float* plane = img.plane(c);
        for (std::size_t p = 0; p < img.pixels(); ++p)
            plane[p] = static_cast<float>(r.samples[p * r.channels + c]) * scale;
    }
    return img;
}

LabelMap read_label_image(const std::string& path) {
    const Raster r = read_raster(path);
    if (r.channels != 1) throw DataError("'" + path + "': label maps must be single-channel");
    LabelMap out(r.width, r.height);
    for (std::size_t p = 0; p < out.pixels(); ++p)
        out.labels[p] = static_cast<std::int32_t>(r.samples[p]);
    return out;
}

LabelMap import_labels(const std::string& path, int expect_width, int expect_height) {
    LabelMap raw = read_label_image(path);
    if ((expect_width >= 0 && raw.width != expect_width) ||
        (expect_height >= 0 && raw.height != expect_height)) {
        throw DataError("'" + path + "': label map dimensions do not match the image");
    }
    return normalize_labels(raw);
}

void write_label_png16(const std::string& path, const LabelMap& labels) {
    if (labels.n_regions > 65536) throw DataError("too many regions for a 16-bit label PNG");
    std::vector<std::uint16_t> samples(labels.pixels());
    for (std::size_t p = 0; p < labels.pixels(); ++p)
        samples[p] = static_cast<std::uint16_t>(labels.labels[p]);
    write_png(path, samples.data(), labels.width, labels.height, 1);
}

void write_png16_gray(const std::string& path, const std::vector<std::uint16_t>& samples,
                      int width, int height) {
    if (samples.size() != static_cast<std::size_t>(width) * height)
        throw InternalError("sample buffer does not match dimensions");
    write_png(path, samples.data(), width, height, 1);
}

void write_image_png16(const std::string& path, const Image& img) {
    std::vector<std::uint16_t> samples(img.pixels() * img.channels);
    for (std::size_t p = 0; p < img.pixels(); ++p) {
        for (int c = 0; c < img.channels; ++c) {
            float v = img.plane(c)[p];
            v = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
            samples[p * img.channels + c] = static_cast<std::uint16_t>(v * 65535.0f + 0.5f);
        }
    }
    write_png(path, samples.data(), img.width, img.height, img.channels);
}

}  // namespace swseg
