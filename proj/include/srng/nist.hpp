#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srng/bitstream.hpp"

namespace srng::nist {

// Significance level from the battery definition; verdicts are pinned to it.
inline constexpr double kAlpha = 0.01;

// Hard applicability floors; below them a test reports NotApplicable.
inline constexpr std::uint64_t kUniversalMinBits = 387840;
inline constexpr std::uint64_t kLongestRunMinBits = 128;
inline constexpr std::uint64_t kDftMinBits = 1000;

enum class TestKind {
    kFrequency,
    kBlockFrequency,
    kRuns,
    kLongestRun,
    kBinaryMatrixRank,
    kDftSpectral,
    kNonOverlappingTemplate,
    kOverlappingTemplate,
    kUniversal,
    kLinearComplexity,
    kSerial,
    kApproximateEntropy,
    kCusumForward,
    kCusumBackward,
    kRandomExcursions,
    kRandomExcursionsVariant,
};

inline constexpr TestKind kAllKinds[] = {
    TestKind::kFrequency,        TestKind::kBlockFrequency,
    TestKind::kRuns,             TestKind::kLongestRun,
    TestKind::kBinaryMatrixRank, TestKind::kDftSpectral,
    TestKind::kNonOverlappingTemplate, TestKind::kOverlappingTemplate,
    TestKind::kUniversal,        TestKind::kLinearComplexity,
    TestKind::kSerial,           TestKind::kApproximateEntropy,
    TestKind::kCusumForward,     TestKind::kCusumBackward,
    TestKind::kRandomExcursions, TestKind::kRandomExcursionsVariant,
};

std::string kind_name(TestKind kind);
// Row label matching the published results-table layout.
std::string kind_table_label(TestKind kind);

struct TestParams {
    std::size_t block_length = 0;    // BlockFrequency / LinearComplexity block M
    std::size_t pattern_length = 0;  // Serial / ApproximateEntropy m
    std::vector<std::uint8_t> template_bits;  // template tests

    // Battery defaults: BlockFrequency M=128, LinearComplexity M=500,
    // Serial m=16, ApproximateEntropy m=10, template 000000001.
    static TestParams defaults_for(TestKind kind);
};

enum class Verdict { kPass, kFail, kNotApplicable };

std::string verdict_name(Verdict v);

struct TestResult {
    TestKind kind = TestKind::kFrequency;
    std::vector<double> p_values;  // empty iff NotApplicable
    Verdict verdict = Verdict::kNotApplicable;
    std::string detail;

    bool applicable() const { return verdict != Verdict::kNotApplicable; }
};

// Pass iff every p-value >= kAlpha; NotApplicable iff there are none.
Verdict verdict_for(const std::vector<double>& p_values);

// One battery entry, computed per SP 800-22. Throws EmptyInput for empty
// bits and InvalidParams for structurally impossible parameters; length
// shortfalls yield NotApplicable instead.
TestResult run_test(TestKind kind, const BitStream& bits, const TestParams& params);

struct SuiteConfig {
    std::size_t block_frequency_m = 128;
    std::size_t serial_m = 16;
    std::size_t approximate_entropy_m = 10;
    std::size_t linear_complexity_m = 500;
    std::vector<std::uint8_t> template_bits = {0, 0, 0, 0, 0, 0, 0, 0, 1};
};

// All sixteen tests in the fixed report order. A failure inside one test is
// isolated (its result carries the message in detail). Throws InputTooShort
// below 100 bits.
std::vector<TestResult> run_suite(const BitStream& bits, const SuiteConfig& config = {});

bool all_applicable_pass(const std::vector<TestResult>& results);

std::string report_json(const std::vector<TestResult>& results, const SuiteConfig& config);
std::string report_text(const std::vector<TestResult>& results);
// Checkmark/cross + single p-value per row, "-1.000000" for NotApplicable.
std::string report_paper_compat(const std::vector<TestResult>& results);

// Numerics shared by the tests; exposed because they carry their own
// accuracy contracts.
double erfc(double x);
// Regularized upper incomplete gamma Q(a, x); DomainError for a<=0 or x<0.
double igamc(double a, double x);
double normal_cdf(double x);

// Rank of a bit matrix over GF(2); rows are bit vectors of equal length.
int gf2_rank(std::vector<std::uint32_t> rows);
// Shortest LFSR length generating the sequence.
std::size_t berlekamp_massey(const std::vector<std::uint8_t>& bits);

}  // namespace srng::nist
