#include "srng/generator.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "srng/errors.hpp"

namespace srng {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr int kMaxConsecutiveSkips = 1000;

std::uint64_t splitmix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Lemire-style reduction of a 32-bit draw onto [0, bound).
std::size_t reduce32(std::uint32_t draw, std::size_t bound) {
    return static_cast<std::size_t>((static_cast<std::uint64_t>(draw) * bound) >> 32);
}

std::uint32_t xorshift_round(std::uint32_t seed) {
    seed ^= seed << 13;
    seed ^= seed >> 17;
    seed ^= seed << 5;
    return seed;
}

struct WordAttempt {
    std::uint32_t word = 0;
    bool all_zero = false;
};

WordAttempt attempt_word(const Spectrogram& d, const FrameSize& size, std::uint64_t tick_value) {
    const std::size_t x_start = reduce32(static_cast<std::uint32_t>(tick_value >> 32), d.rows);
    const std::size_t y_start = reduce32(static_cast<std::uint32_t>(tick_value), d.cols);
    const std::size_t x_end = std::min(x_start + size.c, d.rows);
    const std::size_t y_end = std::min(y_start + size.k, d.cols);
    std::uint32_t seed = 0;
    bool all_zero = true;
    for (std::size_t r = x_start; r < x_end; ++r) {
        for (std::size_t c = y_start; c < y_end; ++c) {
            const std::uint32_t t = pixel_word(d.at(r, c));
            all_zero &= (t == 0);
            seed ^= t;
            seed = xorshift_round(seed);
        }
    }
    return {seed, all_zero};
}

}  // namespace

std::uint64_t SelectorState::value_at(std::uint64_t k) const {
    return splitmix64(seed_ + (k + 1) * kGolden);
}

void FrameSize::validate() const {
    if (c < 1 || k < 1) throw InvalidParams("frame size c and k must be >= 1");
}

std::uint32_t pixel_word(float magnitude) {
    if (!std::isfinite(magnitude)) throw NonFiniteInput("pixel magnitude must be finite");
    if (magnitude == 0.0f) return 0;  // collapse -0.0 onto the zero word
    return std::bit_cast<std::uint32_t>(magnitude);
}

FrameSelection select_frame(const Spectrogram& d, const FrameSize& size, SelectorState& sel) {
    d.validate();
    size.validate();
    const std::uint64_t v = sel.next();
    FrameSelection out;
    out.x_start = reduce32(static_cast<std::uint32_t>(v >> 32), d.rows);
    out.y_start = reduce32(static_cast<std::uint32_t>(v), d.cols);
    out.x_end = std::min(out.x_start + size.c, d.rows);
    out.y_end = std::min(out.y_start + size.k, d.cols);
    out.pixels.reserve((out.x_end - out.x_start) * (out.y_end - out.y_start));
    for (std::size_t r = out.x_start; r < out.x_end; ++r) {
        for (std::size_t c = out.y_start; c < out.y_end; ++c) {
            out.pixels.push_back(pixel_word(d.at(r, c)));
        }
    }
    return out;
}

std::uint32_t extract_seed(const FrameSelection& frame) {
    if (frame.pixels.empty()) throw EmptyFrame("frame selection holds no pixels");
    std::uint32_t seed = 0;
    for (std::uint32_t t : frame.pixels) {
        seed ^= t;
        seed = xorshift_round(seed);
    }
    return seed;
}

BitStream generate_bits(const Spectrogram& d, const FrameSize& size, std::uint64_t n_bits,
                        SelectorState& sel, GenerateStats* stats) {
    d.validate();
    size.validate();
    if (n_bits == 0) throw InvalidParams("n_bits must be >= 1");

    const std::uint64_t words_needed = (n_bits + 31) / 32;
    BitStream out;
    GenerateStats local;
    int consecutive_skips = 0;
    std::uint64_t words_done = 0;

    while (words_done < words_needed) {
        // One batch of attempts; positions come from the counter-based
        // selector, so every attempt is independently addressable and the
        // ordered compaction below reproduces the serial result exactly.
        const std::uint64_t batch = std::max<std::uint64_t>(words_needed - words_done, 64);
        const std::uint64_t base = sel.counter();
        std::vector<WordAttempt> attempts(batch);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(batch); ++i) {
            attempts[static_cast<std::size_t>(i)] =
                attempt_word(d, size, sel.value_at(base + static_cast<std::uint64_t>(i)));
        }
        std::uint64_t consumed = 0;
        for (std::uint64_t i = 0; i < batch && words_done < words_needed; ++i) {
            ++consumed;
            if (attempts[i].all_zero) {
                ++local.frames_skipped;
                if (++consecutive_skips >= kMaxConsecutiveSkips) {
                    sel.skip_to(base + consumed);
                    throw DegenerateSource(
                        "1000 consecutive all-zero frames; the spectrogram is blank or unsuitable");
                }
                continue;
            }
            consecutive_skips = 0;
            ++local.frames_used;
            out.append_word32(attempts[i].word);
            ++words_done;
        }
        sel.skip_to(base + consumed);
    }
    out.truncate(n_bits);
    if (stats) *stats = local;
    return out;
}

BitStream serial::generate_bits(const Spectrogram& d, const FrameSize& size, std::uint64_t n_bits,
                                SelectorState& sel, GenerateStats* stats) {
    d.validate();
    size.validate();
    if (n_bits == 0) throw InvalidParams("n_bits must be >= 1");

    const std::uint64_t words_needed = (n_bits + 31) / 32;
    BitStream out;
    GenerateStats local;
    int consecutive_skips = 0;
    for (std::uint64_t words = 0; words < words_needed;) {
        const FrameSelection frame = select_frame(d, size, sel);
        bool all_zero = true;
        for (std::uint32_t t : frame.pixels) all_zero &= (t == 0);
        if (all_zero) {
            ++local.frames_skipped;
            if (++consecutive_skips >= kMaxConsecutiveSkips) {
                throw DegenerateSource(
                    "1000 consecutive all-zero frames; the spectrogram is blank or unsuitable");
            }
            continue;
        }
        consecutive_skips = 0;
        ++local.frames_used;
        out.append_word32(extract_seed(frame));
        ++words;
    }
    out.truncate(n_bits);
    if (stats) *stats = local;
    return out;
}

LatencyReport bench_latency(const Spectrogram& d, const FrameSize& size, std::uint64_t n_bits,
                            std::uint64_t sel_seed) {
    using clock = std::chrono::steady_clock;
    {
        SelectorState warm(sel_seed);
        generate_bits(d, size, n_bits, warm);
    }
    std::vector<double> runs_ms;
    for (int run = 0; run < 5; ++run) {
        SelectorState sel(sel_seed);
        const auto t0 = clock::now();
        generate_bits(d, size, n_bits, sel);
        const auto t1 = clock::now();
        runs_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(runs_ms.begin(), runs_ms.end());
    LatencyReport report;
    report.median_ms = runs_ms[runs_ms.size() / 2];
    report.bits_per_second = report.median_ms > 0
                                 ? static_cast<double>(n_bits) / (report.median_ms / 1000.0)
                                 : 0.0;
    return report;
}

}  // namespace srng
