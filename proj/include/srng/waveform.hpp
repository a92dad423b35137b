#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace srng {

// Parameters of one synthesized baseband frame. Defaults mirror the
// full-scale profile (61.44 MHz, 40 ms, 15 MHz band at 15 kHz SCS).
struct SynthParams {
    double sample_rate_hz = 61.44e6;
    double frame_duration_ms = 40.0;
    double bandwidth_hz = 15e6;
    double subcarrier_spacing_hz = 15e3;
    double snr_db = 50.0;
    double doppler_hz = 0.0;
    double center_offset_hz = 0.0;
    std::uint64_t prng_seed = 0;

    // Throws InvalidParams naming the violated constraint.
    void validate() const;

    std::size_t total_samples() const;
    std::size_t subcarrier_count() const;
    std::size_t ifft_length() const;  // samples per OFDM symbol body

    // Desk-scale profile for fast runs: 1.92 MHz, 10 ms, 0.96 MHz band.
    static SynthParams small_profile();
};

struct BasebandFrame {
    std::vector<std::complex<float>> samples;
    double sample_rate_hz = 0.0;
};

// Windowed-OFDM frame: QPSK data subcarriers, 1/16 cyclic prefix,
// raised-cosine symbol crossfade, an exact frequency-domain lowpass at the
// band edge, the configured frequency shift/Doppler rotation, and AWGN
// calibrated so the in-band SNR equals snr_db. Pure function of params.
BasebandFrame synthesize_frame(const SynthParams& params);

// Raw I/Q export: interleaved little-endian float32 (I,Q,I,Q,...).
void write_iq_f32(const BasebandFrame& frame, const std::string& path);

}  // namespace srng
