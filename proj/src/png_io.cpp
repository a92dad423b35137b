#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "srng/errors.hpp"
#include "srng/spectrogram.hpp"

namespace srng {
namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Spectrogram load_spectrogram_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw IoError("cannot open for reading: " + path);

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw DecodeError("not a PNG file: " + path);
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("libpng init failed");
    }

    std::vector<std::vector<png_byte>> row_storage;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("PNG decode failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    // Normalize every input to 8-bit RGB; gray inputs then have R=G=B and
    // the luminance weights sum to 1, so they pass through unchanged.
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
        png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA) {
        png_set_gray_to_rgb(png);
    }
    png_read_update_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    if (width == 0 || height == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw EmptyImage("PNG with zero dimension: " + path);
    }

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    row_storage.assign(height, std::vector<png_byte>(rowbytes));
    std::vector<png_bytep> rows(height);
    for (png_uint_32 r = 0; r < height; ++r) rows[r] = row_storage[r].data();
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Spectrogram out;
    out.rows = height;
    out.cols = width;
    out.mag.resize(static_cast<std::size_t>(height) * width);
    for (png_uint_32 r = 0; r < height; ++r) {
        const png_byte* px = row_storage[r].data();
        for (png_uint_32 c = 0; c < width; ++c) {
            const double lum = 0.299 * px[3 * c] + 0.587 * px[3 * c + 1] + 0.114 * px[3 * c + 2];
            out.mag[r * width + c] = static_cast<float>(lum / 255.0);
        }
    }
    return out;
}

void save_spectrogram_png(const Spectrogram& s, const std::string& path) {
    s.validate();
    float lo = s.mag[0], hi = s.mag[0];
    for (float v : s.mag) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const float span = hi - lo;

    std::vector<std::vector<png_byte>> row_storage(s.rows, std::vector<png_byte>(s.cols));
    for (std::size_t r = 0; r < s.rows; ++r) {
        for (std::size_t c = 0; c < s.cols; ++c) {
            // min-max normalize to [0,255]; constant matrices map to 0
            const float v = s.mag[r * s.cols + c];
            const double scaled = span > 0 ? 255.0 * (v - lo) / span : 0.0;
            row_storage[r][c] = static_cast<png_byte>(std::lround(scaled));
        }
    }

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG encode failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(s.cols), static_cast<png_uint_32>(s.rows), 8,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (std::size_t r = 0; r < s.rows; ++r) png_write_row(png, row_storage[r].data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace srng
