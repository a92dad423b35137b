#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srng/generator.hpp"
#include "srng/spectrogram.hpp"

namespace srng {

// Shannon entropy of the byte distribution, in bits per byte [0, 8].
double shannon_entropy(const std::vector<std::uint8_t>& bytes);
// Bit-granularity companion, in bits per bit [0, 1].
double shannon_bit_entropy(const std::vector<std::uint8_t>& bytes);

struct EntropyGrid {
    std::vector<std::size_t> c_values;
    std::vector<std::size_t> k_values;
    std::vector<double> entropy_bits_per_byte;  // row-major [c][k]
    std::vector<double> entropy_bits_per_bit;   // secondary measure
    std::vector<std::uint8_t> flagged;          // 1 where the cell hit DegenerateSource

    double at(std::size_t ci, std::size_t ki) const {
        return entropy_bits_per_byte[ci * k_values.size() + ki];
    }
    bool is_flagged(std::size_t ci, std::size_t ki) const {
        return flagged[ci * k_values.size() + ki] != 0;
    }
};

// One generator run per (c, k) cell; cells are independent and evaluated
// concurrently with per-cell selector seeds derived from (sel_seed, c, k),
// so the grid is deterministic for any thread count. Degenerate cells
// record entropy 0 and a flag instead of failing the sweep.
EntropyGrid entropy_sweep(const Spectrogram& d, const std::vector<std::size_t>& c_range,
                          const std::vector<std::size_t>& k_range, std::size_t bytes_per_cell,
                          std::uint64_t sel_seed);

namespace serial {
EntropyGrid entropy_sweep(const Spectrogram& d, const std::vector<std::size_t>& c_range,
                          const std::vector<std::size_t>& k_range, std::size_t bytes_per_cell,
                          std::uint64_t sel_seed);
}  // namespace serial

// Header "c,k,entropy_bits_per_byte,flagged"; one row per cell.
void write_entropy_csv(const EntropyGrid& grid, const std::string& path);

// Grayscale heatmap of the byte-entropy grid (min-max normalized).
void write_entropy_heatmap_png(const EntropyGrid& grid, const std::string& path);

}  // namespace srng
