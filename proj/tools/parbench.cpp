// Compares the OpenMP kernels against their serial references: STFT,
// bit generation, and the entropy sweep.

#include <chrono>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include "srng/entropy.hpp"
#include "srng/generator.hpp"
#include "srng/spectrogram.hpp"
#include "srng/waveform.hpp"

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

template <typename F>
double best_of(int runs, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < runs; ++i) best = std::min(best, time_ms(fn));
    return best;
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
    std::cout << std::left << std::setw(22) << name << std::right << std::fixed
              << std::setprecision(1) << std::setw(12) << serial_ms << std::setw(12)
              << parallel_ms << std::setw(10) << std::setprecision(2)
              << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0) << "   "
              << (identical ? "bit-identical" : "MISMATCH") << "\n";
}

}  // namespace

int main() {
    std::cout << "threads: " << omp_get_max_threads() << "\n\n";
    std::cout << std::left << std::setw(22) << "kernel" << std::right << std::setw(12)
              << "serial(ms)" << std::setw(12) << "omp(ms)" << std::setw(10) << "speedup"
              << "\n";

    srng::SynthParams sp;
    sp.prng_seed = 42;
    const srng::BasebandFrame frame = srng::synthesize_frame(sp);
    const srng::StftParams stft;

    srng::Spectrogram spec_serial, spec_parallel;
    const double stft_serial = best_of(3, [&] { spec_serial = srng::serial::compute_spectrogram(frame, stft); });
    const double stft_parallel = best_of(3, [&] { spec_parallel = srng::compute_spectrogram(frame, stft); });
    row("stft 4096x600", stft_serial, stft_parallel, spec_serial.mag == spec_parallel.mag);

    const srng::FrameSize size{30, 30};
    srng::BitStream bits_serial, bits_parallel;
    const double gen_serial = best_of(3, [&] {
        srng::SelectorState sel(7);
        bits_serial = srng::serial::generate_bits(spec_serial, size, 1 << 20, sel);
    });
    const double gen_parallel = best_of(3, [&] {
        srng::SelectorState sel(7);
        bits_parallel = srng::generate_bits(spec_parallel, size, 1 << 20, sel);
    });
    row("generate 1Mbit 30x30", gen_serial, gen_parallel, bits_serial == bits_parallel);

    std::vector<std::size_t> cs, ks;
    for (std::size_t v = 2; v <= 40; v += 2) {
        cs.push_back(v);
        ks.push_back(v);
    }
    srng::EntropyGrid grid_serial, grid_parallel;
    const double sweep_serial = best_of(1, [&] {
        grid_serial = srng::serial::entropy_sweep(spec_serial, cs, ks, 4096, 11);
    });
    const double sweep_parallel = best_of(1, [&] {
        grid_parallel = srng::entropy_sweep(spec_parallel, cs, ks, 4096, 11);
    });
    row("sweep 20x20 cells", sweep_serial, sweep_parallel,
        grid_serial.entropy_bits_per_byte == grid_parallel.entropy_bits_per_byte);
    return 0;
}
