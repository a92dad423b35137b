#include <doctest.h>

#include <fstream>
#include <random>

#include <json.hpp>

#include "srng/errors.hpp"
#include "srng/nist.hpp"

using namespace srng::nist;
using srng::BitStream;

namespace {

BitStream load_case(const std::string& name, std::uint64_t n_bits) {
    std::ifstream f(std::string(SRNG_TEST_DATA_DIR) + "/" + name, std::ios::binary);
    REQUIRE(f.good());
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
    BitStream out;
    for (std::uint64_t i = 0; i < n_bits; ++i) {
        out.append_bit((raw[i >> 3] >> (7 - (i & 7))) & 1);
    }
    return out;
}

TestResult run(TestKind kind, const BitStream& bits) {
    return run_test(kind, bits, TestParams::defaults_for(kind));
}

}  // namespace

TEST_CASE("worked examples from the standard") {
    const auto freq = run(TestKind::kFrequency, BitStream::from_string("1011010101"));
    CHECK(freq.p_values[0] == doctest::Approx(0.527089).epsilon(1e-4));

    TestParams bf;
    bf.block_length = 3;
    const auto block = run_test(TestKind::kBlockFrequency, BitStream::from_string("0110011010"), bf);
    CHECK(block.p_values[0] == doctest::Approx(0.801252).epsilon(1e-4));

    const auto runs = run(TestKind::kRuns, BitStream::from_string("1001101011"));
    CHECK(runs.p_values[0] == doctest::Approx(0.147232).epsilon(1e-4));

    TestParams sp;
    sp.pattern_length = 3;
    const auto serial = run_test(TestKind::kSerial, BitStream::from_string("0011011101"), sp);
    CHECK(serial.p_values[0] == doctest::Approx(0.808792).epsilon(1e-4));
    CHECK(serial.p_values[1] == doctest::Approx(0.670320).epsilon(1e-4));

    TestParams ap;
    ap.pattern_length = 3;
    const auto apen = run_test(TestKind::kApproximateEntropy, BitStream::from_string("0100110101"), ap);
    CHECK(apen.p_values[0] == doctest::Approx(0.261961).epsilon(1e-4));

    const auto cusum = run(TestKind::kCusumForward, BitStream::from_string("1011010111"));
    CHECK(cusum.p_values[0] == doctest::Approx(0.4116588).epsilon(1e-4));
}

TEST_CASE("published battery values for the binary expansion of e") {
    const BitStream e_bits = load_case("nist_inputs/e_1m.bin", 1000000);
    CHECK(run(TestKind::kFrequency, e_bits).p_values[0] == doctest::Approx(0.953749).epsilon(1e-4));
    CHECK(run(TestKind::kUniversal, e_bits).p_values[0] == doctest::Approx(0.282568).epsilon(1e-4));
    CHECK(run(TestKind::kCusumForward, e_bits).p_values[0] == doctest::Approx(0.669887).epsilon(1e-3));
    CHECK(run(TestKind::kCusumBackward, e_bits).p_values[0] == doctest::Approx(0.724266).epsilon(1e-3));
    TestParams sp;
    sp.pattern_length = 2;
    const auto serial = run_test(TestKind::kSerial, e_bits, sp);
    CHECK(serial.p_values[0] == doctest::Approx(0.843764).epsilon(1e-4));
    CHECK(serial.p_values[1] == doctest::Approx(0.561915).epsilon(1e-4));
    TestParams ap;
    ap.pattern_length = 10;
    CHECK(run_test(TestKind::kApproximateEntropy, e_bits, ap).p_values[0] ==
          doctest::Approx(0.700073).epsilon(1e-4));
}

TEST_CASE("trivial verdict cases") {
    // perfectly balanced alternating sequence: S = 0, p = 1
    std::string alternating;
    for (int i = 0; i < 500; ++i) alternating += "01";
    const auto freq = run(TestKind::kFrequency, BitStream::from_string(alternating));
    CHECK(freq.p_values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(freq.verdict == Verdict::kPass);

    // maximally biased input
    BitStream zeros;
    for (int i = 0; i < 1000000; ++i) zeros.append_bit(0);
    const auto fail = run(TestKind::kFrequency, zeros);
    CHECK(fail.p_values[0] < 1e-10);
    CHECK(fail.verdict == Verdict::kFail);
}

TEST_CASE("length-based applicability") {
    std::mt19937_64 rng(99);
    BitStream bits;
    for (int i = 0; i < 4096; ++i) bits.append_bit(static_cast<int>(rng() & 1));

    CHECK(run(TestKind::kUniversal, bits).verdict == Verdict::kNotApplicable);
    CHECK(run(TestKind::kRandomExcursions, bits).verdict == Verdict::kNotApplicable);
    CHECK(run(TestKind::kRandomExcursionsVariant, bits).verdict == Verdict::kNotApplicable);

    const auto results = run_suite(bits);
    int reported = 0;
    for (const auto& r : results) {
        if (r.kind == TestKind::kUniversal || r.kind == TestKind::kRandomExcursions ||
            r.kind == TestKind::kRandomExcursionsVariant) {
            CHECK(r.verdict == Verdict::kNotApplicable);
        } else {
            CHECK(!r.p_values.empty());
            ++reported;
        }
    }
    CHECK(reported == 13);
}

TEST_CASE("suite rejects very short input and keeps report order") {
    BitStream tiny = BitStream::from_string("10101");
    CHECK_THROWS_AS(run_suite(tiny), srng::InputTooShort);

    std::mt19937_64 rng(7);
    BitStream bits;
    for (int i = 0; i < 2000; ++i) bits.append_bit(static_cast<int>(rng() & 1));
    const auto results = run_suite(bits);
    REQUIRE(results.size() == 16);
    for (std::size_t i = 0; i < results.size(); ++i) CHECK(results[i].kind == kAllKinds[i]);
}

TEST_CASE("gf2_rank identities") {
    std::vector<std::uint32_t> identity(32);
    for (int i = 0; i < 32; ++i) identity[static_cast<std::size_t>(i)] = 1u << i;
    CHECK(gf2_rank(identity) == 32);
    CHECK(gf2_rank(std::vector<std::uint32_t>(32, 0)) == 0);
    std::vector<std::uint32_t> dup(32, 0);
    dup[3] = dup[17] = 0xDEADBEEF;
    CHECK(gf2_rank(dup) == 1);
}

TEST_CASE("berlekamp_massey known complexities") {
    CHECK(berlekamp_massey({0, 0, 0, 1}) == 4);
    CHECK(berlekamp_massey({0, 0, 0, 0}) == 0);
    CHECK(berlekamp_massey({1, 0, 1, 0, 1, 0, 1, 0, 1, 0}) == 2);
}

TEST_CASE("verdict is a pure function of the p-values") {
    CHECK(verdict_for({}) == Verdict::kNotApplicable);
    CHECK(verdict_for({0.5, 0.01}) == Verdict::kPass);
    CHECK(verdict_for({0.5, 0.00999}) == Verdict::kFail);
    CHECK(verdict_for({0.0}) == Verdict::kFail);
}

TEST_CASE("p-values stay in [0, 1] across random and adversarial inputs") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 6; ++trial) {
        BitStream bits;
        const int n = 1100 + trial * 517;
        for (int i = 0; i < n; ++i) {
            const int b = trial == 5 ? (i % 7 == 0) : static_cast<int>(rng() & 1);
            bits.append_bit(b);
        }
        for (TestKind kind : kAllKinds) {
            const auto r = run(kind, bits);
            for (double p : r.p_values) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
        }
    }
}

TEST_CASE("second-level calibration: frequency p-values are uniform") {
    // 200 disjoint 1e5-bit blocks from a reference PRNG; chi-square over 10
    // bins at significance 1e-4.
    std::mt19937_64 rng(20240229);
    constexpr int kBlocks = 200;
    constexpr int kBlockBits = 100000;
    std::array<int, 10> bins{};
    for (int b = 0; b < kBlocks; ++b) {
        BitStream bits;
        for (int i = 0; i < kBlockBits; ++i) bits.append_bit(static_cast<int>(rng() & 1));
        const double p = run(TestKind::kFrequency, bits).p_values[0];
        bins[std::min(9, static_cast<int>(p * 10.0))]++;
    }
    double chi = 0.0;
    for (int count : bins) chi += (count - 20.0) * (count - 20.0) / 20.0;
    const double p_uniform = igamc(4.5, chi / 2.0);
    CHECK(p_uniform >= 1e-4);
}
