#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "srng/waveform.hpp"

namespace srng {

// The entropy source D: rows = frequency bins, columns = time slices.
// Stored as float32 so each pixel has a well-defined 32-bit word.
struct Spectrogram {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> mag;  // row-major, rows*cols entries, finite and >= 0

    float at(std::size_t r, std::size_t c) const { return mag[r * cols + c]; }
    float& at(std::size_t r, std::size_t c) { return mag[r * cols + c]; }
    void validate() const;  // throws on empty dims or negative/non-finite cells
};

enum class Window { kRectangular, kHann };

struct StftParams {
    std::size_t fft_length = 4096;  // power of two
    std::size_t hop = 0;            // 0 means fft_length (no overlap)
    Window window = Window::kHann;
    std::size_t output_rows = 256;
    std::size_t output_cols = 256;

    std::size_t effective_hop() const { return hop == 0 ? fft_length : hop; }
    void validate() const;
};

// Full-resolution magnitudes before any resize: fft_length rows (fftshifted,
// row 0 = -fs/2) by floor((n - fft_length)/hop) + 1 columns, in double.
struct StftMagnitudes {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> mag;  // row-major

    double at(std::size_t r, std::size_t c) const { return mag[r * cols + c]; }
};

StftMagnitudes stft_magnitudes(const BasebandFrame& frame, const StftParams& p);

// Box resampling over equal partitions: cell value is the average of the
// source region it covers, so the area-weighted sum is preserved.
StftMagnitudes resize_box(const StftMagnitudes& in, std::size_t rows, std::size_t cols);

// STFT magnitude resized to output_rows x output_cols. Columns are
// transformed concurrently; the result is bit-identical to the serial path.
Spectrogram compute_spectrogram(const BasebandFrame& frame, const StftParams& p);

namespace serial {
// Single-threaded reference used by the equivalence tests and benchmarks.
StftMagnitudes stft_magnitudes(const BasebandFrame& frame, const StftParams& p);
Spectrogram compute_spectrogram(const BasebandFrame& frame, const StftParams& p);
}  // namespace serial

// PNG: 8-bit grayscale out (min-max normalized, constant maps to black);
// grayscale or RGB in (RGB collapses to 0.299R + 0.587G + 0.114B), [0,1].
Spectrogram load_spectrogram_png(const std::string& path);
void save_spectrogram_png(const Spectrogram& s, const std::string& path);

// Raw matrix format: "SPG1", u32 rows, u32 cols (LE), float32 row-major.
Spectrogram load_spectrogram_raw(const std::string& path);
void save_spectrogram_raw(const Spectrogram& s, const std::string& path);

// Dispatches on file magic: PNG signature or "SPG1".
Spectrogram load_spectrogram_auto(const std::string& path);

}  // namespace srng
