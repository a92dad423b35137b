#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include "srng/errors.hpp"
#include "srng/fft.hpp"
#include "srng/waveform.hpp"

using namespace srng;

namespace {

constexpr double kTau = 6.283185307179586;

struct Psd {
    std::vector<double> freq;
    std::vector<double> power;
};

// Welch periodogram (Hann segments), independent of the spectrogram module.
Psd welch(const BasebandFrame& frame, std::size_t seg) {
    const std::size_t nseg = frame.samples.size() / seg;
    std::vector<double> window(seg);
    for (std::size_t i = 0; i < seg; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(kTau * static_cast<double>(i) / static_cast<double>(seg)));
    }
    Psd out;
    out.power.assign(seg, 0.0);
    std::vector<std::complex<double>> buf(seg);
    for (std::size_t s = 0; s < nseg; ++s) {
        for (std::size_t i = 0; i < seg; ++i) {
            buf[i] = window[i] * std::complex<double>(frame.samples[s * seg + i]);
        }
        fft_inplace(buf, false);
        for (std::size_t i = 0; i < seg; ++i) out.power[i] += std::norm(buf[i]);
    }
    // fftshift both axes so the arrays run from -fs/2 to +fs/2
    out.freq.resize(seg);
    std::vector<double> shifted(seg);
    for (std::size_t i = 0; i < seg; ++i) {
        double f = static_cast<double>(i) / static_cast<double>(seg);
        if (f >= 0.5) f -= 1.0;
        out.freq[(i + seg / 2) % seg] = f * frame.sample_rate_hz;
        shifted[(i + seg / 2) % seg] = out.power[i];
    }
    out.power = std::move(shifted);
    return out;
}

double band_ratio_db(const BasebandFrame& frame, const SynthParams& p, std::size_t seg) {
    const Psd psd = welch(frame, seg);
    // guard: the synthesized lowpass transition plus 4 analysis bins
    const double guard = 4.0 * p.subcarrier_spacing_hz + 4.0 * p.sample_rate_hz / static_cast<double>(seg);
    const double lo = p.center_offset_hz - p.bandwidth_hz / 2.0;
    const double hi = p.center_offset_hz + p.bandwidth_hz / 2.0;
    double in_sum = 0.0, out_sum = 0.0;
    std::size_t in_n = 0, out_n = 0;
    for (std::size_t i = 0; i < psd.freq.size(); ++i) {
        const double f = psd.freq[i];
        if (f >= lo && f <= hi) {
            in_sum += psd.power[i];
            ++in_n;
        } else if (f < lo - guard || f > hi + guard) {
            out_sum += psd.power[i];
            ++out_n;
        }
    }
    return 10.0 * std::log10((in_sum / in_n) / (out_sum / out_n));
}

}  // namespace

TEST_CASE("invariant violations are rejected with the constraint named") {
    SynthParams p;
    p.center_offset_hz = 25e6;  // 2*(25e6 + 7.5e6) > 61.44e6
    CHECK_THROWS_WITH_AS(synthesize_frame(p), doctest::Contains("aliasing"), InvalidParams);

    p = SynthParams{};
    p.bandwidth_hz = 20e6;  // 20e6 / 15e3 is not an integer
    CHECK_THROWS_WITH_AS(synthesize_frame(p), doctest::Contains("subcarrier"), InvalidParams);

    p = SynthParams{};
    p.frame_duration_ms = 0.0001234;  // fractional sample count
    CHECK_THROWS_WITH_AS(synthesize_frame(p), doctest::Contains("integer sample count"),
                         InvalidParams);

    p = SynthParams{};
    p.snr_db = 100.0;
    p.doppler_hz = -1.0;
    CHECK_THROWS_AS(synthesize_frame(p), InvalidParams);
}

TEST_CASE("frame length matches duration times rate exactly") {
    SynthParams p;
    p.prng_seed = 7;
    CHECK(p.total_samples() == 2457600);  // 0.040 * 61.44e6
    const BasebandFrame f = synthesize_frame(p);
    CHECK(f.samples.size() == 2457600);
    for (std::size_t i = 0; i < f.samples.size(); i += 997) {
        CHECK(std::isfinite(f.samples[i].real()));
        CHECK(std::isfinite(f.samples[i].imag()));
    }
}

TEST_CASE("identical params produce bit-identical frames") {
    SynthParams p = SynthParams::small_profile();
    p.prng_seed = 42;
    p.center_offset_hz = 0.1e6;
    const BasebandFrame a = synthesize_frame(p);
    const BasebandFrame b = synthesize_frame(p);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(std::memcmp(a.samples.data(), b.samples.data(),
                      a.samples.size() * sizeof(std::complex<float>)) == 0);
    p.prng_seed = 43;
    const BasebandFrame c = synthesize_frame(p);
    CHECK(std::memcmp(a.samples.data(), c.samples.data(),
                      a.samples.size() * sizeof(std::complex<float>)) != 0);
}

TEST_CASE("occupied band dominates out-of-band power by 40 dB at high snr") {
    SynthParams p = SynthParams::small_profile();
    p.snr_db = 100.0;
    p.doppler_hz = 0.0;
    p.prng_seed = 7;
    p.center_offset_hz = 0.1e6;
    const BasebandFrame frame = synthesize_frame(p);
    CHECK(band_ratio_db(frame, p, 1024) >= 40.0);
}

TEST_CASE("noise calibration lands within 1 dB at each table snr") {
    for (double snr : {40.0, 50.0, 100.0}) {
        SynthParams p = SynthParams::small_profile();
        p.prng_seed = 11;
        p.center_offset_hz = 0.1e6;
        p.snr_db = 300.0;  // effectively noiseless
        const BasebandFrame clean = synthesize_frame(p);
        p.snr_db = snr;
        const BasebandFrame noisy = synthesize_frame(p);
        // identical seeds make the signal parts equal, so the difference is
        // exactly the noise realization
        const std::size_t n = clean.samples.size();
        std::vector<std::complex<double>> sig(n), noise(n);
        for (std::size_t i = 0; i < n; ++i) {
            sig[i] = std::complex<double>(clean.samples[i]);
            noise[i] = std::complex<double>(noisy.samples[i]) - sig[i];
        }
        fft_inplace(sig, false);
        fft_inplace(noise, false);
        const double lo = p.center_offset_hz - p.bandwidth_hz / 2.0;
        const double hi = p.center_offset_hz + p.bandwidth_hz / 2.0;
        double ps = 0.0, pn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double f = static_cast<double>(i) / static_cast<double>(n);
            if (f >= 0.5) f -= 1.0;
            f *= p.sample_rate_hz;
            if (f >= lo && f <= hi) {
                ps += std::norm(sig[i]);
                pn += std::norm(noise[i]);
            }
        }
        const double measured = 10.0 * std::log10(ps / pn);
        CHECK(std::abs(measured - snr) <= 1.0);
    }
}

TEST_CASE("spectral centroid sits within one subcarrier spacing of the offset") {
    for (double offset : {0.1e6, -0.3e6}) {
        SynthParams p = SynthParams::small_profile();
        p.prng_seed = 3;
        p.snr_db = 100.0;
        p.center_offset_hz = offset;
        const BasebandFrame frame = synthesize_frame(p);
        const Psd psd = welch(frame, 1024);
        const double lo = offset - p.bandwidth_hz / 2.0;
        const double hi = offset + p.bandwidth_hz / 2.0;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < psd.freq.size(); ++i) {
            if (psd.freq[i] >= lo && psd.freq[i] <= hi) {
                num += psd.freq[i] * psd.power[i];
                den += psd.power[i];
            }
        }
        CHECK(std::abs(num / den - offset) <= p.subcarrier_spacing_hz);
    }
}

TEST_CASE("doppler applies a pure rotation") {
    SynthParams p = SynthParams::small_profile();
    p.prng_seed = 8;
    p.snr_db = 300.0;
    p.doppler_hz = 0.0;
    const BasebandFrame still = synthesize_frame(p);
    p.doppler_hz = 500.0;
    const BasebandFrame moving = synthesize_frame(p);
    for (std::size_t i = 0; i < still.samples.size(); i += 1009) {
        const double ph = kTau * 500.0 * static_cast<double>(i) / p.sample_rate_hz;
        const auto rotated = std::complex<double>(still.samples[i]) *
                             std::complex<double>(std::cos(ph), std::sin(ph));
        CHECK(std::abs(rotated - std::complex<double>(moving.samples[i])) < 1e-4);
    }
}

TEST_CASE("raw I/Q export is interleaved little-endian float32") {
    BasebandFrame f;
    f.sample_rate_hz = 1.0;
    f.samples = {{1.0f, -2.0f}, {0.25f, 8.0f}};
    write_iq_f32(f, "iq_test.bin");
    std::ifstream in("iq_test.bin", std::ios::binary);
    float vals[4];
    in.read(reinterpret_cast<char*>(vals), sizeof(vals));
    CHECK(vals[0] == 1.0f);
    CHECK(vals[1] == -2.0f);
    CHECK(vals[2] == 0.25f);
    CHECK(vals[3] == 8.0f);
    std::remove("iq_test.bin");
}
