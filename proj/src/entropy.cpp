#include "srng/entropy.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>

#include "srng/errors.hpp"

namespace srng {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t sel_seed, std::size_t c, std::size_t k) {
    return mix64(sel_seed + kGolden * (static_cast<std::uint64_t>(c) << 20 | k));
}

struct Cell {
    double byte_entropy = 0.0;
    double bit_entropy = 0.0;
    bool degenerate = false;
};

Cell evaluate_cell(const Spectrogram& d, std::size_t c, std::size_t k, std::size_t bytes_per_cell,
                   std::uint64_t sel_seed) {
    Cell cell;
    SelectorState sel(cell_seed(sel_seed, c, k));
    try {
        const BitStream bits = generate_bits(d, FrameSize{c, k}, bytes_per_cell * 8, sel);
        cell.byte_entropy = shannon_entropy(bits.bytes());
        cell.bit_entropy = shannon_bit_entropy(bits.bytes());
    } catch (const DegenerateSource&) {
        cell.degenerate = true;
    }
    return cell;
}

EntropyGrid sweep_impl(const Spectrogram& d, const std::vector<std::size_t>& c_range,
                       const std::vector<std::size_t>& k_range, std::size_t bytes_per_cell,
                       std::uint64_t sel_seed, bool parallel) {
    d.validate();
    if (c_range.empty() || k_range.empty()) throw InvalidParams("sweep ranges must be nonempty");
    if (bytes_per_cell < 256) throw InvalidParams("bytes_per_cell must be >= 256");
    for (auto v : c_range) {
        if (v < 1) throw InvalidParams("c values must be >= 1");
    }
    for (auto v : k_range) {
        if (v < 1) throw InvalidParams("k values must be >= 1");
    }

    EntropyGrid grid;
    grid.c_values = c_range;
    grid.k_values = k_range;
    const std::size_t cells = c_range.size() * k_range.size();
    grid.entropy_bits_per_byte.assign(cells, 0.0);
    grid.entropy_bits_per_bit.assign(cells, 0.0);
    grid.flagged.assign(cells, 0);

    auto run_cell = [&](std::size_t idx) {
        const std::size_t ci = idx / k_range.size();
        const std::size_t ki = idx % k_range.size();
        const Cell cell = evaluate_cell(d, c_range[ci], k_range[ki], bytes_per_cell, sel_seed);
        grid.entropy_bits_per_byte[idx] = cell.byte_entropy;
        grid.entropy_bits_per_bit[idx] = cell.bit_entropy;
        grid.flagged[idx] = cell.degenerate ? 1 : 0;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(cells); ++idx) {
            run_cell(static_cast<std::size_t>(idx));
        }
    } else {
        for (std::size_t idx = 0; idx < cells; ++idx) run_cell(idx);
    }
    return grid;
}

}  // namespace

double shannon_entropy(const std::vector<std::uint8_t>& bytes) {
    if (bytes.empty()) throw EmptyInput("entropy of an empty byte sequence");
    std::array<std::uint64_t, 256> histogram{};
    for (std::uint8_t b : bytes) ++histogram[b];
    const double n = static_cast<double>(bytes.size());
    double h = 0.0;
    for (std::uint64_t count : histogram) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / n;
        h -= p * std::log2(p);
    }
    return h;
}

double shannon_bit_entropy(const std::vector<std::uint8_t>& bytes) {
    if (bytes.empty()) throw EmptyInput("entropy of an empty byte sequence");
    std::uint64_t ones = 0;
    for (std::uint8_t b : bytes) ones += static_cast<std::uint64_t>(std::popcount(b));
    const double n = static_cast<double>(bytes.size()) * 8.0;
    const double p = static_cast<double>(ones) / n;
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

EntropyGrid entropy_sweep(const Spectrogram& d, const std::vector<std::size_t>& c_range,
                          const std::vector<std::size_t>& k_range, std::size_t bytes_per_cell,
                          std::uint64_t sel_seed) {
    return sweep_impl(d, c_range, k_range, bytes_per_cell, sel_seed, /*parallel=*/true);
}

EntropyGrid serial::entropy_sweep(const Spectrogram& d, const std::vector<std::size_t>& c_range,
                                  const std::vector<std::size_t>& k_range,
                                  std::size_t bytes_per_cell, std::uint64_t sel_seed) {
    return sweep_impl(d, c_range, k_range, bytes_per_cell, sel_seed, /*parallel=*/false);
}

void write_entropy_csv(const EntropyGrid& grid, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << "c,k,entropy_bits_per_byte,flagged\n";
    for (std::size_t ci = 0; ci < grid.c_values.size(); ++ci) {
        for (std::size_t ki = 0; ki < grid.k_values.size(); ++ki) {
            f << grid.c_values[ci] << "," << grid.k_values[ki] << "," << grid.at(ci, ki) << ","
              << (grid.is_flagged(ci, ki) ? 1 : 0) << "\n";
        }
    }
    if (!f) throw IoError("write failed: " + path);
}

void write_entropy_heatmap_png(const EntropyGrid& grid, const std::string& path) {
    Spectrogram img;
    img.rows = grid.c_values.size();
    img.cols = grid.k_values.size();
    img.mag.resize(img.rows * img.cols);
    for (std::size_t i = 0; i < img.mag.size(); ++i) {
        img.mag[i] = static_cast<float>(grid.entropy_bits_per_byte[i]);
    }
    save_spectrogram_png(img, path);
}

}  // namespace srng
