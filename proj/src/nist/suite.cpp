#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "srng/errors.hpp"
#include "srng/nist.hpp"

namespace srng::nist {
namespace {

TestParams params_for(TestKind kind, const SuiteConfig& config) {
    TestParams p;
    switch (kind) {
        case TestKind::kBlockFrequency: p.block_length = config.block_frequency_m; break;
        case TestKind::kLinearComplexity: p.block_length = config.linear_complexity_m; break;
        case TestKind::kSerial: p.pattern_length = config.serial_m; break;
        case TestKind::kApproximateEntropy: p.pattern_length = config.approximate_entropy_m; break;
        case TestKind::kNonOverlappingTemplate:
        case TestKind::kOverlappingTemplate:
            p.template_bits = config.template_bits;
            break;
        default: break;
    }
    return p;
}

double min_p(const std::vector<double>& ps) {
    double m = 1.0;
    for (double p : ps) m = std::min(m, p);
    return m;
}

}  // namespace

std::string kind_name(TestKind kind) {
    switch (kind) {
        case TestKind::kFrequency: return "frequency";
        case TestKind::kBlockFrequency: return "block_frequency";
        case TestKind::kRuns: return "runs";
        case TestKind::kLongestRun: return "longest_run";
        case TestKind::kBinaryMatrixRank: return "binary_matrix_rank";
        case TestKind::kDftSpectral: return "dft_spectral";
        case TestKind::kNonOverlappingTemplate: return "non_overlapping_template";
        case TestKind::kOverlappingTemplate: return "overlapping_template";
        case TestKind::kUniversal: return "universal";
        case TestKind::kLinearComplexity: return "linear_complexity";
        case TestKind::kSerial: return "serial";
        case TestKind::kApproximateEntropy: return "approximate_entropy";
        case TestKind::kCusumForward: return "cusum_forward";
        case TestKind::kCusumBackward: return "cusum_backward";
        case TestKind::kRandomExcursions: return "random_excursions";
        case TestKind::kRandomExcursionsVariant: return "random_excursions_variant";
    }
    return "unknown";
}

std::string kind_table_label(TestKind kind) {
    switch (kind) {
        case TestKind::kFrequency: return "Frequency";
        case TestKind::kBlockFrequency: return "Block Frequency";
        case TestKind::kRuns: return "Run";
        case TestKind::kLongestRun: return "Run (Longest Run of Ones)";
        case TestKind::kBinaryMatrixRank: return "Binary Matrix Rank";
        case TestKind::kDftSpectral: return "Discrete Fourier Transform (Spectral)";
        case TestKind::kNonOverlappingTemplate: return "Non-overlapping Template Matching";
        case TestKind::kOverlappingTemplate: return "Overlapping Template Matching";
        case TestKind::kUniversal: return "Universal Statistical";
        case TestKind::kLinearComplexity: return "Linear Complexity";
        case TestKind::kSerial: return "Serial";
        case TestKind::kApproximateEntropy: return "Approximate Entropy";
        case TestKind::kCusumForward: return "Cumulative Sums (Forward)";
        case TestKind::kCusumBackward: return "Cumulative Sums (Backward)";
        case TestKind::kRandomExcursions: return "Random Excursions";
        case TestKind::kRandomExcursionsVariant: return "Random Excursions Variant";
    }
    return "unknown";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kPass: return "Pass";
        case Verdict::kFail: return "Fail";
        case Verdict::kNotApplicable: return "NotApplicable";
    }
    return "unknown";
}

std::vector<TestResult> run_suite(const BitStream& bits, const SuiteConfig& config) {
    if (bits.bit_length() < 100) {
        throw InputTooShort("suite needs at least 100 bits, got " +
                            std::to_string(bits.bit_length()));
    }
    std::vector<TestResult> results;
    results.reserve(std::size(kAllKinds));
    for (TestKind kind : kAllKinds) {
        try {
            results.push_back(run_test(kind, bits, params_for(kind, config)));
        } catch (const Error& e) {
            // one test's failure never aborts the battery
            TestResult r;
            r.kind = kind;
            r.verdict = Verdict::kNotApplicable;
            r.detail = std::string("error: ") + e.what();
            results.push_back(r);
        }
    }
    return results;
}

bool all_applicable_pass(const std::vector<TestResult>& results) {
    for (const auto& r : results) {
        if (r.verdict == Verdict::kFail) return false;
    }
    return true;
}

std::string report_json(const std::vector<TestResult>& results, const SuiteConfig& config) {
    nlohmann::json doc;
    std::string tpl;
    for (auto b : config.template_bits) tpl += static_cast<char>('0' + b);
    doc["params"] = {
        {"block_frequency_m", config.block_frequency_m},
        {"serial_m", config.serial_m},
        {"approximate_entropy_m", config.approximate_entropy_m},
        {"linear_complexity_m", config.linear_complexity_m},
        {"template", tpl},
        {"alpha", kAlpha},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : results) {
        rows.push_back({
            {"kind", kind_name(r.kind)},
            {"p_values", r.p_values},
            {"verdict", verdict_name(r.verdict)},
            {"detail", r.detail},
        });
    }
    doc["results"] = rows;
    return doc.dump(2) + "\n";
}

std::string report_text(const std::vector<TestResult>& results) {
    std::ostringstream out;
    out << std::left << std::setw(40) << "Test" << std::setw(15) << "Verdict"
        << "p-value(s)\n";
    out << std::string(78, '-') << "\n";
    for (const auto& r : results) {
        out << std::left << std::setw(40) << kind_table_label(r.kind) << std::setw(15)
            << verdict_name(r.verdict);
        if (r.p_values.empty()) {
            out << "-";
        } else {
            for (std::size_t i = 0; i < r.p_values.size(); ++i) {
                if (i) out << " ";
                out << std::fixed << std::setprecision(6) << r.p_values[i];
            }
        }
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n";
    }
    return out.str();
}

std::string report_paper_compat(const std::vector<TestResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        const bool pass = r.verdict == Verdict::kPass;
        out << std::left << std::setw(40) << kind_table_label(r.kind)
            << (pass ? "✓" : "✗") << "  " << std::fixed << std::setprecision(6);
        if (r.verdict == Verdict::kNotApplicable) {
            out << -1.0;
        } else {
            out << min_p(r.p_values);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace srng::nist
