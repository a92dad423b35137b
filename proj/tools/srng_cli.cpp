// Command-line front end: synthesize spectrograms, generate bitstreams,
// audit them with the statistical battery, sweep entropy, measure latency.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srng/entropy.hpp"
#include "srng/errors.hpp"
#include "srng/generator.hpp"
#include "srng/nist.hpp"
#include "srng/spectrogram.hpp"
#include "srng/waveform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRandomnessFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

fs::path output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SRNG_OUT_DIR")) return env;
    return ".";
}

void log_config(const std::string& name, const json& resolved) {
    std::cerr << "[srng] " << name << " config: " << resolved.dump() << "\n";
}

std::vector<std::size_t> parse_range(const std::string& text) {
    // "A..B" inclusive, or a single value
    const auto pos = text.find("..");
    std::vector<std::size_t> out;
    if (pos == std::string::npos) {
        out.push_back(std::stoull(text));
        return out;
    }
    const std::size_t a = std::stoull(text.substr(0, pos));
    const std::size_t b = std::stoull(text.substr(pos + 2));
    if (b < a) throw srng::InvalidParams("range upper bound below lower bound: " + text);
    for (std::size_t v = a; v <= b; ++v) out.push_back(v);
    return out;
}

json params_json(const srng::SynthParams& p) {
    return json{{"sample_rate_hz", p.sample_rate_hz},
                {"frame_duration_ms", p.frame_duration_ms},
                {"bandwidth_hz", p.bandwidth_hz},
                {"subcarrier_spacing_hz", p.subcarrier_spacing_hz},
                {"snr_db", p.snr_db},
                {"doppler_hz", p.doppler_hz},
                {"center_offset_hz", p.center_offset_hz},
                {"prng_seed", p.prng_seed}};
}

struct SynthOptions {
    std::size_t count = 1;
    std::uint64_t seed = 0;
    bool small = false;
    bool iq = false;
    srng::SynthParams base;
    bool offset_given = false;
    srng::StftParams stft;
    std::string out;
};

int cmd_synth(const SynthOptions& opt) {
    const fs::path dir = output_dir(opt.out);
    fs::create_directories(dir);

    srng::SynthParams base = opt.small ? srng::SynthParams::small_profile() : srng::SynthParams{};
    base.snr_db = opt.base.snr_db;
    base.doppler_hz = opt.base.doppler_hz;
    base.prng_seed = opt.seed;
    if (!opt.small) {
        base.sample_rate_hz = opt.base.sample_rate_hz;
        base.frame_duration_ms = opt.base.frame_duration_ms;
        base.bandwidth_hz = opt.base.bandwidth_hz;
        base.subcarrier_spacing_hz = opt.base.subcarrier_spacing_hz;
    }

    // Frequency offsets are drawn per frame from the run seed unless pinned.
    std::mt19937_64 offset_rng(opt.seed ^ 0xC0FFEEull);
    const double max_offset = base.sample_rate_hz / 2.0 - base.bandwidth_hz / 2.0;

    json manifest = json::array();
    for (std::size_t i = 0; i < opt.count; ++i) {
        srng::SynthParams p = base;
        p.prng_seed = opt.seed + i;
        if (opt.offset_given) {
            p.center_offset_hz = opt.base.center_offset_hz;
        } else {
            const double u = static_cast<double>(offset_rng() >> 11) * 0x1.0p-53;
            p.center_offset_hz = (2.0 * u - 1.0) * max_offset;
        }
        const srng::BasebandFrame frame = srng::synthesize_frame(p);
        const srng::Spectrogram spec = srng::compute_spectrogram(frame, opt.stft);

        std::ostringstream stem;
        stem << "spec_" << std::setfill('0') << std::setw(3) << i;
        const fs::path png = dir / (stem.str() + ".png");
        const fs::path raw = dir / (stem.str() + ".spg1");
        srng::save_spectrogram_png(spec, png.string());
        srng::save_spectrogram_raw(spec, raw.string());
        json entry = {{"index", i}, {"png", png.string()}, {"spg1", raw.string()},
                      {"params", params_json(p)}};
        if (opt.iq) {
            const fs::path iq = dir / (stem.str() + ".iq");
            srng::write_iq_f32(frame, iq.string());
            entry["iq"] = iq.string();
        }
        manifest.push_back(entry);
        std::cout << "wrote " << png.string() << " and " << raw.string() << "\n";
    }
    std::ofstream mf(dir / "manifest.json");
    if (!mf) throw srng::IoError("cannot write manifest");
    mf << manifest.dump(2) << "\n";
    return kExitOk;
}

struct GenOptions {
    std::string input;
    std::string out;
    std::uint64_t bits = 4096;
    std::size_t c = 10, k = 10;
    std::uint64_t sel_seed = 0;
};

int cmd_gen(const GenOptions& opt) {
    const srng::Spectrogram d = srng::load_spectrogram_auto(opt.input);
    srng::SelectorState sel(opt.sel_seed);
    srng::GenerateStats stats;
    const srng::BitStream bits =
        srng::generate_bits(d, srng::FrameSize{opt.c, opt.k}, opt.bits, sel, &stats);
    const fs::path out = opt.out.empty() ? output_dir("") / "bits.bin" : fs::path(opt.out);
    srng::save_packed(bits, out.string(),
                      {{"c", std::to_string(opt.c)},
                       {"k", std::to_string(opt.k)},
                       {"sel_seed", std::to_string(opt.sel_seed)},
                       {"frames_skipped", std::to_string(stats.frames_skipped)}});
    srng::save_ascii(bits, out.string() + ".txt");
    std::cout << "wrote " << out.string() << " (" << bits.bit_length() << " bits, "
              << stats.frames_used << " frames, " << stats.frames_skipped << " skipped)\n";
    return kExitOk;
}

struct NistOptions {
    std::string input;
    std::string out;
    std::string format = "text";
};

int cmd_nist(const NistOptions& opt) {
    const srng::BitStream bits = srng::load_bits_auto(opt.input);
    const srng::nist::SuiteConfig config;
    const auto results = srng::nist::run_suite(bits, config);
    std::string report;
    if (opt.format == "json") report = srng::nist::report_json(results, config);
    else if (opt.format == "paper-compat") report = srng::nist::report_paper_compat(results);
    else report = srng::nist::report_text(results);
    if (opt.out.empty()) {
        std::cout << report;
    } else {
        std::ofstream f(opt.out);
        if (!f) throw srng::IoError("cannot open for writing: " + opt.out);
        f << report;
        std::cout << "wrote " << opt.out << "\n";
    }
    return srng::nist::all_applicable_pass(results) ? kExitOk : kExitRandomnessFailure;
}

struct SweepOptions {
    std::string input;
    std::string out;
    std::string heatmap;
    std::string c_range = "2..40";
    std::string k_range = "2..40";
    std::size_t bytes_per_cell = 4096;
    std::uint64_t sel_seed = 0;
};

int cmd_sweep(const SweepOptions& opt) {
    const srng::Spectrogram d = srng::load_spectrogram_auto(opt.input);
    const auto grid = srng::entropy_sweep(d, parse_range(opt.c_range), parse_range(opt.k_range),
                                          opt.bytes_per_cell, opt.sel_seed);
    const fs::path out = opt.out.empty() ? output_dir("") / "sweep.csv" : fs::path(opt.out);
    srng::write_entropy_csv(grid, out.string());
    std::cout << "wrote " << out.string() << "\n";
    if (!opt.heatmap.empty()) {
        srng::write_entropy_heatmap_png(grid, opt.heatmap);
        std::cout << "wrote " << opt.heatmap << "\n";
    }
    double lo = 8.0, hi = 0.0, bit_lo = 1.0;
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < grid.entropy_bits_per_byte.size(); ++i) {
        if (grid.flagged[i]) {
            ++flagged;
            continue;
        }
        lo = std::min(lo, grid.entropy_bits_per_byte[i]);
        hi = std::max(hi, grid.entropy_bits_per_byte[i]);
        bit_lo = std::min(bit_lo, grid.entropy_bits_per_bit[i]);
    }
    std::cout << "byte entropy min " << lo << " max " << hi << ", bit entropy min " << bit_lo
              << ", flagged cells " << flagged << "\n";
    return kExitOk;
}

struct BenchOptions {
    std::string input;
    std::string out;
    std::size_t c = 10, k = 10;
    std::uint64_t sel_seed = 0;
};

int cmd_bench(const BenchOptions& opt) {
    const srng::Spectrogram d = srng::load_spectrogram_auto(opt.input);
    const std::uint64_t sizes[] = {4096, 8192, 16384, 32768};
    std::ostringstream csv;
    csv << "n_bits,median_ms,bits_per_second\n";
    std::cout << std::left << std::setw(10) << "n(bits)" << std::setw(14) << "latency(ms)"
              << "throughput(bits/s)\n";
    for (std::uint64_t n : sizes) {
        const auto r = srng::bench_latency(d, srng::FrameSize{opt.c, opt.k}, n, opt.sel_seed);
        std::cout << std::left << std::setw(10) << n << std::setw(14) << std::fixed
                  << std::setprecision(3) << r.median_ms << std::setprecision(0)
                  << r.bits_per_second << "\n";
        csv << n << "," << r.median_ms << "," << r.bits_per_second << "\n";
    }
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw srng::IoError("cannot open for writing: " + opt.out);
        f << csv.str();
        std::cout << "wrote " << opt.out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrogram-seeded random bit generator and SP 800-22 audit tool"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize spectrograms from OFDM frames");
    synth_cmd->add_option("--count", synth.count, "Number of spectrograms");
    synth_cmd->add_option("--seed", synth.seed, "Base PRNG seed");
    synth_cmd->add_flag("--small", synth.small, "Desk-scale profile (1.92 MHz, 10 ms)");
    synth_cmd->add_flag("--iq", synth.iq, "Also export raw I/Q (float32 interleaved)");
    synth_cmd->add_option("--snr-db", synth.base.snr_db, "Channel SNR in dB");
    synth_cmd->add_option("--doppler-hz", synth.base.doppler_hz, "Doppler rotation in Hz");
    synth_cmd->add_option("--sample-rate-hz", synth.base.sample_rate_hz, "Sample rate");
    synth_cmd->add_option("--duration-ms", synth.base.frame_duration_ms, "Frame duration");
    synth_cmd->add_option("--bandwidth-hz", synth.base.bandwidth_hz, "Occupied bandwidth");
    synth_cmd->add_option("--scs-hz", synth.base.subcarrier_spacing_hz, "Subcarrier spacing");
    auto* offset_opt =
        synth_cmd->add_option("--offset-hz", synth.base.center_offset_hz,
                              "Center offset (default: random per frame)");
    synth_cmd->add_option("--fft-length", synth.stft.fft_length, "STFT length");
    synth_cmd->add_option("--rows", synth.stft.output_rows, "Spectrogram rows");
    synth_cmd->add_option("--cols", synth.stft.output_cols, "Spectrogram cols");
    synth_cmd->add_option("--out", synth.out, "Output directory (or $SRNG_OUT_DIR)");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a bitstream from a spectrogram");
    gen_cmd->add_option("--input", gen.input, "Spectrogram (PNG or SPG1)")->required();
    gen_cmd->add_option("--bits", gen.bits, "Number of bits")->required();
    gen_cmd->add_option("--c", gen.c, "Frame row extent");
    gen_cmd->add_option("--k", gen.k, "Frame column extent");
    gen_cmd->add_option("--sel-seed", gen.sel_seed, "Frame-position selector seed");
    gen_cmd->add_option("--out", gen.out, "Output bitstream path");

    NistOptions nist;
    auto* nist_cmd = app.add_subcommand("nist", "Run the statistical battery on a bitstream");
    nist_cmd->add_option("--input", nist.input, "Bitstream (packed or ASCII)")->required();
    nist_cmd->add_option("--format", nist.format, "text | json | paper-compat")
        ->check(CLI::IsMember({"text", "json", "paper-compat"}));
    nist_cmd->add_option("--out", nist.out, "Report path (default stdout)");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Entropy sweep over frame sizes");
    sweep_cmd->add_option("--input", sweep.input, "Spectrogram (PNG or SPG1)")->required();
    sweep_cmd->add_option("--c", sweep.c_range, "c range, e.g. 2..40");
    sweep_cmd->add_option("--k", sweep.k_range, "k range, e.g. 2..40");
    sweep_cmd->add_option("--bytes-per-cell", sweep.bytes_per_cell, "Bytes generated per cell");
    sweep_cmd->add_option("--sel-seed", sweep.sel_seed, "Base selector seed");
    sweep_cmd->add_option("--out", sweep.out, "CSV path");
    sweep_cmd->add_option("--heatmap", sweep.heatmap, "Optional heatmap PNG path");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Latency table for 4096..32768 bits");
    bench_cmd->add_option("--input", bench.input, "Spectrogram (PNG or SPG1)")->required();
    bench_cmd->add_option("--c", bench.c, "Frame row extent");
    bench_cmd->add_option("--k", bench.k, "Frame column extent");
    bench_cmd->add_option("--sel-seed", bench.sel_seed, "Selector seed");
    bench_cmd->add_option("--out", bench.out, "CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth_cmd->parsed()) {
            synth.offset_given = offset_opt->count() > 0;
            log_config("synth", {{"count", synth.count}, {"seed", synth.seed},
                                 {"small", synth.small}, {"params", params_json(synth.base)}});
            return cmd_synth(synth);
        }
        if (gen_cmd->parsed()) {
            log_config("gen", {{"input", gen.input}, {"bits", gen.bits}, {"c", gen.c},
                               {"k", gen.k}, {"sel_seed", gen.sel_seed}});
            return cmd_gen(gen);
        }
        if (nist_cmd->parsed()) {
            log_config("nist", {{"input", nist.input}, {"format", nist.format}});
            return cmd_nist(nist);
        }
        if (sweep_cmd->parsed()) {
            log_config("sweep", {{"input", sweep.input}, {"c", sweep.c_range},
                                 {"k", sweep.k_range}, {"bytes_per_cell", sweep.bytes_per_cell},
                                 {"sel_seed", sweep.sel_seed}});
            return cmd_sweep(sweep);
        }
        if (bench_cmd->parsed()) {
            log_config("bench", {{"input", bench.input}, {"c", bench.c}, {"k", bench.k}});
            return cmd_bench(bench);
        }
    } catch (const srng::DegenerateSource& e) {
        std::cerr << "error: degenerate source: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const srng::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const srng::DecodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const srng::EmptyImage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const srng::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
