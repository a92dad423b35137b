#pragma once

#include <cstdint>
#include <vector>

#include "srng/bitstream.hpp"
#include "srng/spectrogram.hpp"

namespace srng {

// Frame-position source: a counter-based splitmix64 stream, replayable and
// randomly addressable by tick, kept separate from the output path.
class SelectorState {
public:
    explicit SelectorState(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    // The 64-bit value of tick k, independent of the current position.
    std::uint64_t value_at(std::uint64_t k) const;

    std::uint64_t next() { return value_at(counter_++); }
    void skip_to(std::uint64_t counter) { counter_ = counter; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

struct FrameSize {
    std::size_t c = 10;  // row extent
    std::size_t k = 10;  // column extent
    void validate() const;
};

struct FrameSelection {
    std::size_t x_start = 0, x_end = 0;  // rows [x_start, x_end)
    std::size_t y_start = 0, y_end = 0;  // cols [y_start, y_end)
    std::vector<std::uint32_t> pixels;   // row-major window, 32-bit words
};

// IEEE-754 single-precision bit pattern of the magnitude; negative zero
// normalizes to 0x00000000. Throws NonFiniteInput on NaN/inf.
std::uint32_t pixel_word(float magnitude);

// Algorithm: draw (x_start, y_start) uniformly, clamp the window ends to
// the matrix, flatten row-major. Consumes one selector tick.
FrameSelection select_frame(const Spectrogram& d, const FrameSize& size, SelectorState& sel);

// seed = 0; per pixel word t: seed ^= t, then the 13/17/5 shift-XOR round.
// A single-pixel frame is exactly one xorshift32 update of its word.
std::uint32_t extract_seed(const FrameSelection& frame);

struct GenerateStats {
    std::uint64_t frames_used = 0;
    std::uint64_t frames_skipped = 0;  // all-zero-word frames
};

// Repeated select+extract, 32 bits per seed word MSB-first, truncated to
// n_bits. All-zero frames are skipped; 1000 consecutive skips raise
// DegenerateSource. Words are computed concurrently (partitioned by attempt
// index) and the output is bit-identical to the serial reference.
BitStream generate_bits(const Spectrogram& d, const FrameSize& size, std::uint64_t n_bits,
                        SelectorState& sel, GenerateStats* stats = nullptr);

namespace serial {
BitStream generate_bits(const Spectrogram& d, const FrameSize& size, std::uint64_t n_bits,
                        SelectorState& sel, GenerateStats* stats = nullptr);
}  // namespace serial

struct LatencyReport {
    double median_ms = 0.0;
    double bits_per_second = 0.0;
};

// Wall-clock time of generate_bits: one warmup run, then median of 5.
LatencyReport bench_latency(const Spectrogram& d, const FrameSize& size, std::uint64_t n_bits,
                            std::uint64_t sel_seed);

}  // namespace srng
