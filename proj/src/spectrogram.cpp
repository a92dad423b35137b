#include "srng/spectrogram.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "srng/errors.hpp"
#include "srng/fft.hpp"

namespace srng {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> make_window(Window w, std::size_t n) {
    std::vector<double> out(n, 1.0);
    if (w == Window::kHann) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
        }
    }
    return out;
}

// One STFT column: window, transform, fftshifted magnitudes into out.
void stft_column(const BasebandFrame& frame, const std::vector<double>& window,
                 std::size_t offset, std::size_t n_fft, std::size_t col,
                 StftMagnitudes& out) {
    std::vector<std::complex<double>> buf(n_fft);
    for (std::size_t i = 0; i < n_fft; ++i) {
        const auto& s = frame.samples[offset + i];
        buf[i] = {window[i] * static_cast<double>(s.real()),
                  window[i] * static_cast<double>(s.imag())};
    }
    fft_inplace(buf, /*inverse=*/false);
    const std::size_t half = n_fft / 2;
    for (std::size_t f = 0; f < n_fft; ++f) {
        const std::size_t src = (f + half) % n_fft;  // row 0 = -fs/2
        out.mag[f * out.cols + col] = std::abs(buf[src]);
    }
}

StftMagnitudes stft_impl(const BasebandFrame& frame, const StftParams& p, bool parallel) {
    p.validate();
    if (frame.samples.size() < p.fft_length) {
        throw TooFewSamples("frame has " + std::to_string(frame.samples.size()) +
                            " samples, need at least fft_length = " + std::to_string(p.fft_length));
    }
    const std::size_t hop = p.effective_hop();
    const std::size_t n_cols = (frame.samples.size() - p.fft_length) / hop + 1;
    StftMagnitudes out;
    out.rows = p.fft_length;
    out.cols = n_cols;
    out.mag.resize(out.rows * out.cols);
    const std::vector<double> window = make_window(p.window, p.fft_length);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_cols); ++c) {
            stft_column(frame, window, static_cast<std::size_t>(c) * hop, p.fft_length,
                        static_cast<std::size_t>(c), out);
        }
    } else {
        for (std::size_t c = 0; c < n_cols; ++c) {
            stft_column(frame, window, c * hop, p.fft_length, c, out);
        }
    }
    return out;
}

Spectrogram finish_spectrogram(const StftMagnitudes& full, const StftParams& p) {
    const StftMagnitudes resized = resize_box(full, p.output_rows, p.output_cols);
    Spectrogram out;
    out.rows = resized.rows;
    out.cols = resized.cols;
    out.mag.resize(resized.mag.size());
    for (std::size_t i = 0; i < resized.mag.size(); ++i) {
        out.mag[i] = static_cast<float>(resized.mag[i]);
    }
    return out;
}

}  // namespace

void Spectrogram::validate() const {
    if (rows == 0 || cols == 0) throw EmptyImage("spectrogram has a zero dimension");
    if (mag.size() != rows * cols) throw InvalidParams("spectrogram buffer size mismatch");
    for (float v : mag) {
        if (!std::isfinite(v) || v < 0.0f) {
            throw InvalidParams("spectrogram cells must be finite and nonnegative");
        }
    }
}

void StftParams::validate() const {
    if (fft_length == 0 || (fft_length & (fft_length - 1)) != 0) {
        throw InvalidParams("fft_length must be a power of two (got " + std::to_string(fft_length) + ")");
    }
    if (effective_hop() > fft_length) {
        throw InvalidParams("hop must be <= fft_length");
    }
    if (output_rows == 0 || output_cols == 0) {
        throw InvalidParams("output dimensions must be positive");
    }
    if (output_rows > fft_length) {
        throw InvalidParams("output_rows must be <= fft_length");
    }
}

StftMagnitudes stft_magnitudes(const BasebandFrame& frame, const StftParams& p) {
    return stft_impl(frame, p, /*parallel=*/true);
}

StftMagnitudes serial::stft_magnitudes(const BasebandFrame& frame, const StftParams& p) {
    return stft_impl(frame, p, /*parallel=*/false);
}

namespace {

// Averages src over the span [d*ratio, (d+1)*ratio) with fractional edge
// weights. src is addressed as src[s * stride].
double box_average(const double* src, std::size_t n_src, std::size_t stride,
                   std::size_t d, double ratio) {
    const double lo = static_cast<double>(d) * ratio;
    const double hi = static_cast<double>(d + 1) * ratio;
    double acc = 0.0;
    for (std::size_t s = static_cast<std::size_t>(lo); s < n_src && static_cast<double>(s) < hi; ++s) {
        const double w = std::min(hi, static_cast<double>(s + 1)) - std::max(lo, static_cast<double>(s));
        if (w > 0) acc += w * src[s * stride];
    }
    return acc / ratio;
}

}  // namespace

StftMagnitudes resize_box(const StftMagnitudes& in, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw InvalidParams("resize target must be positive");

    StftMagnitudes mid;  // rows resampled, columns untouched
    mid.rows = rows;
    mid.cols = in.cols;
    mid.mag.resize(rows * in.cols);
    const double row_ratio = static_cast<double>(in.rows) / static_cast<double>(rows);
    for (std::size_t d = 0; d < rows; ++d) {
        for (std::size_t c = 0; c < in.cols; ++c) {
            mid.mag[d * in.cols + c] = box_average(in.mag.data() + c, in.rows, in.cols, d, row_ratio);
        }
    }

    StftMagnitudes out;
    out.rows = rows;
    out.cols = cols;
    out.mag.resize(rows * cols);
    const double col_ratio = static_cast<double>(in.cols) / static_cast<double>(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t d = 0; d < cols; ++d) {
            out.mag[r * cols + d] = box_average(mid.mag.data() + r * in.cols, in.cols, 1, d, col_ratio);
        }
    }
    return out;
}

Spectrogram compute_spectrogram(const BasebandFrame& frame, const StftParams& p) {
    return finish_spectrogram(stft_impl(frame, p, /*parallel=*/true), p);
}

Spectrogram serial::compute_spectrogram(const BasebandFrame& frame, const StftParams& p) {
    return finish_spectrogram(stft_impl(frame, p, /*parallel=*/false), p);
}

void save_spectrogram_raw(const Spectrogram& s, const std::string& path) {
    s.validate();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write("SPG1", 4);
    const std::uint32_t dims[2] = {static_cast<std::uint32_t>(s.rows), static_cast<std::uint32_t>(s.cols)};
    f.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    f.write(reinterpret_cast<const char*>(s.mag.data()),
            static_cast<std::streamsize>(s.mag.size() * sizeof(float)));
    if (!f) throw IoError("write failed: " + path);
}

Spectrogram load_spectrogram_raw(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    char magic[4];
    if (!f.read(magic, 4) || std::memcmp(magic, "SPG1", 4) != 0) {
        throw DecodeError("not an SPG1 file: " + path);
    }
    std::uint32_t dims[2];
    if (!f.read(reinterpret_cast<char*>(dims), sizeof(dims))) {
        throw DecodeError("truncated SPG1 header: " + path);
    }
    if (dims[0] == 0 || dims[1] == 0) throw EmptyImage("SPG1 with zero dimension: " + path);
    Spectrogram out;
    out.rows = dims[0];
    out.cols = dims[1];
    out.mag.resize(static_cast<std::size_t>(dims[0]) * dims[1]);
    if (!f.read(reinterpret_cast<char*>(out.mag.data()),
                static_cast<std::streamsize>(out.mag.size() * sizeof(float)))) {
        throw DecodeError("truncated SPG1 payload: " + path);
    }
    out.validate();
    return out;
}

Spectrogram load_spectrogram_auto(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    unsigned char magic[4] = {0, 0, 0, 0};
    f.read(reinterpret_cast<char*>(magic), 4);
    f.close();
    if (std::memcmp(magic, "SPG1", 4) == 0) return load_spectrogram_raw(path);
    return load_spectrogram_png(path);
}

}  // namespace srng
