#include "srng/waveform.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "srng/errors.hpp"
#include "srng/fft.hpp"

namespace srng {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMaskTransitionSubcarriers = 4.0;

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-6; }

// (0,1] uniform from a 64-bit word; keeps log() finite in Box-Muller.
double to_unit(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

void SynthParams::validate() const {
    std::ostringstream err;
    if (!(sample_rate_hz > 0)) {
        err << "sample_rate_hz must be positive (got " << sample_rate_hz << ")";
    } else if (!(frame_duration_ms > 0)) {
        err << "frame_duration_ms must be positive (got " << frame_duration_ms << ")";
    } else if (!(bandwidth_hz > 0)) {
        err << "bandwidth_hz must be positive (got " << bandwidth_hz << ")";
    } else if (!(subcarrier_spacing_hz > 0)) {
        err << "subcarrier_spacing_hz must be positive (got " << subcarrier_spacing_hz << ")";
    } else if (doppler_hz < 0) {
        err << "doppler_hz must be nonnegative (got " << doppler_hz << ")";
    } else if (sample_rate_hz < 2.0 * (std::abs(center_offset_hz) + bandwidth_hz / 2.0)) {
        err << "aliasing: sample_rate_hz (" << sample_rate_hz
            << ") < 2*(|center_offset_hz| + bandwidth_hz/2) = "
            << 2.0 * (std::abs(center_offset_hz) + bandwidth_hz / 2.0);
    } else if (!near_integer(bandwidth_hz / subcarrier_spacing_hz) ||
               std::round(bandwidth_hz / subcarrier_spacing_hz) < 1.0) {
        err << "subcarrier_spacing_hz (" << subcarrier_spacing_hz
            << ") must divide bandwidth_hz (" << bandwidth_hz
            << ") into an integer subcarrier count >= 1";
    } else if (!near_integer(frame_duration_ms * sample_rate_hz / 1000.0)) {
        err << "frame_duration_ms * sample_rate_hz must give an integer sample count (got "
            << frame_duration_ms * sample_rate_hz / 1000.0 << ")";
    } else if (!near_integer(sample_rate_hz / subcarrier_spacing_hz)) {
        err << "sample_rate_hz (" << sample_rate_hz
            << ") must be an integer multiple of subcarrier_spacing_hz ("
            << subcarrier_spacing_hz << ") to place subcarriers on the synthesis grid";
    }
    const std::string msg = err.str();
    if (!msg.empty()) throw InvalidParams(msg);
}

std::size_t SynthParams::total_samples() const {
    return static_cast<std::size_t>(std::llround(frame_duration_ms * sample_rate_hz / 1000.0));
}

std::size_t SynthParams::subcarrier_count() const {
    return static_cast<std::size_t>(std::llround(bandwidth_hz / subcarrier_spacing_hz));
}

std::size_t SynthParams::ifft_length() const {
    return static_cast<std::size_t>(std::llround(sample_rate_hz / subcarrier_spacing_hz));
}

SynthParams SynthParams::small_profile() {
    SynthParams p;
    p.sample_rate_hz = 1.92e6;
    p.frame_duration_ms = 10.0;
    p.bandwidth_hz = 0.96e6;
    return p;
}

BasebandFrame synthesize_frame(const SynthParams& params) {
    params.validate();

    const std::size_t n_total = params.total_samples();
    const std::size_t nfft = params.ifft_length();
    const std::size_t n_sc = params.subcarrier_count();
    const std::size_t n_cp = nfft / 16;
    const std::size_t lw = n_cp / 2;  // crossfade ramp, eats into the CP
    const std::size_t stride = nfft + n_cp;
    const std::size_t n_sym = (n_total + stride - 1) / stride + 1;

    std::mt19937_64 rng(params.prng_seed);

    // Occupied bins around DC (DC itself carries no data).
    const std::size_t half = n_sc / 2;
    std::vector<long> bins;
    bins.reserve(n_sc);
    for (long b = -static_cast<long>(n_sc - half); b <= static_cast<long>(half); ++b) {
        if (b != 0) bins.push_back(b);
    }

    std::vector<double> ramp(lw);
    for (std::size_t i = 0; i < lw; ++i) {
        ramp[i] = 0.5 * (1.0 - std::cos(kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(lw)));
    }

    const double qpsk_scale = 1.0 / std::sqrt(2.0);
    const double body_scale = 1.0 / std::sqrt(static_cast<double>(n_sc));
    std::vector<std::complex<double>> signal(n_sym * stride + nfft + lw);
    std::vector<std::complex<double>> spectrum(nfft);
    for (std::size_t s = 0; s < n_sym; ++s) {
        std::fill(spectrum.begin(), spectrum.end(), std::complex<double>(0.0, 0.0));
        for (long b : bins) {
            const std::uint64_t q = rng() >> 62;
            const double re = (q & 1u) ? qpsk_scale : -qpsk_scale;
            const double im = (q & 2u) ? qpsk_scale : -qpsk_scale;
            const std::size_t idx = static_cast<std::size_t>((b + static_cast<long>(nfft)) % static_cast<long>(nfft));
            spectrum[idx] = {re, im};
        }
        fft_inplace(spectrum, /*inverse=*/true);

        // CP + body + cyclic suffix of lw samples, crossfaded into the
        // previous symbol's tail.
        const std::size_t base = s * stride;
        auto body = [&](std::size_t t) { return spectrum[t] * body_scale; };
        const std::size_t ext_len = n_cp + nfft + lw;
        for (std::size_t t = 0; t < ext_len; ++t) {
            std::complex<double> v;
            if (t < n_cp) v = body(nfft - n_cp + t);
            else if (t < n_cp + nfft) v = body(t - n_cp);
            else v = body(t - n_cp - nfft);
            if (t < lw) v *= ramp[t];
            else if (t >= ext_len - lw) v *= ramp[ext_len - 1 - t];
            signal[base + t] += v;
        }
    }
    signal.resize(n_total);

    // Exact lowpass: flat over the occupied band, raised cosine out to
    // bandwidth/2 + 4 subcarrier spacings, zero beyond.
    {
        fft_inplace(signal, /*inverse=*/false);
        const double trans = kMaskTransitionSubcarriers * params.subcarrier_spacing_hz;
        const double edge = params.bandwidth_hz / 2.0;
        const double fs = params.sample_rate_hz;
        const double df = fs / static_cast<double>(n_total);
        for (std::size_t i = 0; i < n_total; ++i) {
            double f = static_cast<double>(i) * df;
            if (f > fs / 2.0) f -= fs;
            const double af = std::abs(f);
            double h;
            if (af <= edge) h = 1.0;
            else if (af >= edge + trans) h = 0.0;
            else h = 0.5 * (1.0 + std::cos(kPi * (af - edge) / trans));
            signal[i] *= h / static_cast<double>(n_total);  // fold in IFFT 1/N
        }
        fft_inplace(signal, /*inverse=*/true);
    }

    // Frequency shift to the configured center, then the Doppler rotation.
    const double shift_hz = params.center_offset_hz + params.doppler_hz;
    if (shift_hz != 0.0) {
        const double fs = params.sample_rate_hz;
        for (std::size_t i = 0; i < n_total; ++i) {
            const double turns = std::fmod(shift_hz * static_cast<double>(i) / fs, 1.0);
            const double ph = 2.0 * kPi * turns;
            signal[i] *= std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }

    // AWGN sized so signal power over the occupied band is snr_db above the
    // noise power falling into that band.
    double mean_power = 0.0;
    for (const auto& v : signal) mean_power += std::norm(v);
    mean_power /= static_cast<double>(n_total);
    const double noise_total =
        mean_power * (params.sample_rate_hz / params.bandwidth_hz) * std::pow(10.0, -params.snr_db / 10.0);
    const double sigma = std::sqrt(noise_total / 2.0);
    for (std::size_t i = 0; i < n_total; ++i) {
        const double u1 = to_unit(rng());
        const double u2 = to_unit(rng());
        const double r = std::sqrt(-2.0 * std::log(u1));
        signal[i] += std::complex<double>(sigma * r * std::cos(2.0 * kPi * u2),
                                          sigma * r * std::sin(2.0 * kPi * u2));
    }

    BasebandFrame out;
    out.sample_rate_hz = params.sample_rate_hz;
    out.samples.resize(n_total);
    for (std::size_t i = 0; i < n_total; ++i) {
        out.samples[i] = {static_cast<float>(signal[i].real()), static_cast<float>(signal[i].imag())};
    }
    return out;
}

void write_iq_f32(const BasebandFrame& frame, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    static_assert(sizeof(std::complex<float>) == 8);
    f.write(reinterpret_cast<const char*>(frame.samples.data()),
            static_cast<std::streamsize>(frame.samples.size() * sizeof(std::complex<float>)));
    if (!f) throw IoError("write failed: " + path);
}

}  // namespace srng
