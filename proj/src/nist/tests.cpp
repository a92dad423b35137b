#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "srng/errors.hpp"
#include "srng/fft.hpp"
#include "srng/nist.hpp"

namespace srng::nist {
namespace {

using Bits = std::vector<std::uint8_t>;

std::vector<double> not_applicable() { return {}; }

// ---------------------------------------------------------------- frequency

std::vector<double> frequency_test(const Bits& eps, std::string& detail) {
    const std::size_t n = eps.size();
    std::int64_t s = 0;
    for (std::uint8_t b : eps) s += 2 * static_cast<std::int64_t>(b) - 1;
    const double s_obs = std::abs(static_cast<double>(s)) / std::sqrt(static_cast<double>(n));
    std::ostringstream d;
    d << "S=" << s << " n=" << n;
    detail = d.str();
    return {erfc(s_obs / std::sqrt(2.0))};
}

std::vector<double> block_frequency_test(const Bits& eps, std::size_t m, std::string& detail) {
    const std::size_t n = eps.size();
    const std::size_t blocks = n / m;
    if (blocks < 1) {
        detail = "needs at least one full block of length M=" + std::to_string(m);
        return not_applicable();
    }
    double chi = 0.0;
    for (std::size_t i = 0; i < blocks; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < m; ++j) ones += eps[i * m + j];
        const double pi = static_cast<double>(ones) / static_cast<double>(m);
        chi += (pi - 0.5) * (pi - 0.5);
    }
    chi *= 4.0 * static_cast<double>(m);
    std::ostringstream d;
    d << "M=" << m << " N=" << blocks << " chi2=" << chi;
    if (m < 20 || static_cast<double>(m) <= 0.01 * static_cast<double>(n)) {
        d << " (M outside the recommended range)";
    }
    detail = d.str();
    return {igamc(static_cast<double>(blocks) / 2.0, chi / 2.0)};
}

std::vector<double> runs_test(const Bits& eps, std::string& detail) {
    const std::size_t n = eps.size();
    if (n < 2) {
        detail = "needs at least 2 bits";
        return not_applicable();
    }
    std::size_t ones = 0;
    for (std::uint8_t b : eps) ones += b;
    const double pi = static_cast<double>(ones) / static_cast<double>(n);
    if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n))) {
        detail = "frequency prerequisite failed (pi=" + std::to_string(pi) + "); p set to 0";
        return {0.0};
    }
    std::size_t vn = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) vn += eps[i] != eps[i + 1];
    const double num = std::abs(static_cast<double>(vn) - 2.0 * static_cast<double>(n) * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * static_cast<double>(n)) * pi * (1.0 - pi);
    detail = "V=" + std::to_string(vn);
    return {erfc(num / den)};
}

std::vector<double> longest_run_test(const Bits& eps, std::string& detail) {
    const std::size_t n = eps.size();
    if (n < kLongestRunMinBits) {
        detail = "needs at least 128 bits";
        return not_applicable();
    }
    std::size_t m;
    std::vector<int> edges;
    std::vector<double> pi;
    if (n < 6272) {
        m = 8;
        edges = {1, 2, 3};
        pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    } else if (n < 750000) {
        m = 128;
        edges = {4, 5, 6, 7, 8};
        pi = {0.1174035788, 0.242955959, 0.249363483, 0.17517706, 0.102701071, 0.112398847};
    } else {
        m = 10000;
        edges = {10, 11, 12, 13, 14, 15};
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    }
    const std::size_t blocks = n / m;
    std::vector<std::size_t> nu(pi.size(), 0);
    for (std::size_t i = 0; i < blocks; ++i) {
        int longest = 0, run = 0;
        for (std::size_t j = 0; j < m; ++j) {
            run = eps[i * m + j] ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        std::size_t cls = 0;
        while (cls < edges.size() && longest > edges[cls]) ++cls;
        ++nu[cls];
    }
    double chi = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double expect = static_cast<double>(blocks) * pi[i];
        chi += (static_cast<double>(nu[i]) - expect) * (static_cast<double>(nu[i]) - expect) / expect;
    }
    detail = "M=" + std::to_string(m) + " N=" + std::to_string(blocks);
    return {igamc(static_cast<double>(pi.size() - 1) / 2.0, chi / 2.0)};
}

// ---------------------------------------------------------------- rank

double rank_probability(int r, int size) {
    double value = std::pow(2.0, static_cast<double>(r) * (2.0 * size - r) - static_cast<double>(size) * size);
    for (int i = 0; i < r; ++i) {
        const double num = 1.0 - std::pow(2.0, i - size);
        value *= num * num / (1.0 - std::pow(2.0, i - r));
    }
    return value;
}

std::vector<double> rank_test(const Bits& eps, std::string& detail) {
    const std::size_t n = eps.size();
    const std::size_t count = n / 1024;
    if (count < 1) {
        detail = "needs at least 1024 bits for one 32x32 matrix";
        return not_applicable();
    }
    std::size_t f32 = 0, f31 = 0;
    std::vector<std::uint32_t> rows(32);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < 32; ++i) {
            std::uint32_t row = 0;
            for (std::size_t j = 0; j < 32; ++j) {
                row = (row << 1) | eps[k * 1024 + i * 32 + j];
            }
            rows[i] = row;
        }
        const int r = gf2_rank(rows);
        if (r == 32) ++f32;
        else if (r == 31) ++f31;
    }
    const std::size_t f30 = count - f32 - f31;
    const double p32 = rank_probability(32, 32);
    const double p31 = rank_probability(31, 32);
    const double p30 = 1.0 - p32 - p31;
    const double nd = static_cast<double>(count);
    const double chi = (f32 - nd * p32) * (f32 - nd * p32) / (nd * p32) +
                       (f31 - nd * p31) * (f31 - nd * p31) / (nd * p31) +
                       (f30 - nd * p30) * (f30 - nd * p30) / (nd * p30);
    detail = "N=" + std::to_string(count) + " F32=" + std::to_string(f32) + " F31=" + std::to_string(f31);
    return {igamc(1.0, chi / 2.0)};
}

// ---------------------------------------------------------------- spectral

std::vector<double> dft_test(const Bits& eps, std::string& detail) {
    const std::size_t n = eps.size();
    if (n < kDftMinBits) {
        detail = "needs at least 1000 bits";
        return not_applicable();
    }
    std::vector<std::complex<double>> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = {2.0 * eps[i] - 1.0, 0.0};
    fft_inplace(x, /*inverse=*/false);
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * static_cast<double>(n));
    std::size_t below = 0;
    for (std::size_t i = 0; i < n / 2; ++i) below += std::abs(x[i]) < threshold;
    const double n0 = 0.95 * static_cast<double>(n) / 2.0;
    const double d = (static_cast<double>(below) - n0) /
                     std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
    detail = "N1=" + std::to_string(below) + " T=" + std::to_string(threshold);
    return {erfc(std::abs(d) / std::sqrt(2.0))};
}

// ---------------------------------------------------------------- templates

std::vector<double> non_overlapping_test(const Bits& eps, const std::vector<std::uint8_t>& tpl,
                                         std::string& detail) {
    const std::size_t n = eps.size();
    const std::size_t m = tpl.size();
    const std::size_t blocks = 8;
    const std::size_t block_len = n / blocks;
    if (block_len < m) {
        detail = "block shorter than the template";
        return not_applicable();
    }
    const double mu = static_cast<double>(block_len - m + 1) / std::pow(2.0, static_cast<double>(m));
    const double var = static_cast<double>(block_len) *
                       (1.0 / std::pow(2.0, static_cast<double>(m)) -
                        (2.0 * static_cast<double>(m) - 1.0) / std::pow(2.0, 2.0 * static_cast<double>(m)));
    double chi = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::uint8_t* block = eps.data() + b * block_len;
        std::size_t w = 0;
        for (std::size_t j = 0; j + m <= block_len;) {
            bool match = true;
            for (std::size_t t = 0; t < m; ++t) {
                if (block[j + t] != tpl[t]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                ++w;
                j += m;
            } else {
                ++j;
            }
        }
        chi += (static_cast<double>(w) - mu) * (static_cast<double>(w) - mu) / var;
    }
    std::ostringstream d;
    d << "template=";
    for (std::uint8_t t : tpl) d << int(t);
    d << " mu=" << mu;
    detail = d.str();
    return {igamc(static_cast<double>(blocks) / 2.0, chi / 2.0)};
}

// Published class probabilities for m=9, M=1032 (lambda = 2).
constexpr double kOverlappingPi9[6] = {0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865};

double overlapping_pr(int u, double eta) {
    if (u == 0) return std::exp(-eta);
    double sum = 0.0;
    for (int l = 1; l <= u; ++l) {
        sum += std::exp(-eta - u * std::log(2.0) + l * std::log(eta) - std::lgamma(l + 1.0) +
                        std::lgamma(static_cast<double>(u)) - std::lgamma(static_cast<double>(l)) -
                        std::lgamma(static_cast<double>(u - l + 1)));
    }
    return sum;
}

std::vector<double> overlapping_test(const Bits& eps, std::size_t m, std::string& detail) {
    const std::size_t n = eps.size();
    const std::size_t block_len = 1032;
    const std::size_t blocks = n / block_len;
    if (blocks < 1) {
        detail = "needs at least 1032 bits";
        return not_applicable();
    }
    constexpr int k = 5;
    std::vector<double> pi(k + 1);
    if (m == 9) {
        pi.assign(kOverlappingPi9, kOverlappingPi9 + 6);
    } else {
        const double lambda = static_cast<double>(block_len - m + 1) / std::pow(2.0, static_cast<double>(m));
        const double eta = lambda / 2.0;
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            pi[i] = overlapping_pr(i, eta);
            sum += pi[i];
        }
        pi[k] = 1.0 - sum;
    }
    std::vector<std::size_t> nu(k + 1, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::uint8_t* block = eps.data() + b * block_len;
        int w = 0;
        for (std::size_t j = 0; j + m <= block_len; ++j) {
            bool match = true;
            for (std::size_t t = 0; t < m; ++t) {
                if (!block[j + t]) {
                    match = false;
                    break;
                }
            }
            w += match;
        }
        ++nu[std::min(w, k)];
    }
    double chi = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double expect = static_cast<double>(blocks) * pi[i];
        chi += (static_cast<double>(nu[i]) - expect) * (static_cast<double>(nu[i]) - expect) / expect;
    }
    detail = "m=" + std::to_string(m) + " N=" + std::to_string(blocks);
    return {igamc(k / 2.0, chi / 2.0)};
}

// ---------------------------------------------------------------- universal

struct UniversalRow {
    std::uint64_t min_bits;
    int l;
};
constexpr UniversalRow kUniversalRows[] = {
    {1059061760, 16}, {496435200, 15}, {231669760, 14}, {107560960, 13},
    {49643520, 12},   {22753280, 11},  {10342400, 10},  {4654080, 9},
    {2068480, 8},     {904960, 7},     {387840, 6},
};
constexpr double kUniversalExpected[17] = {0, 0, 0, 0, 0, 0,
                                           5.2177052, 6.1962507, 7.1836656, 8.1764248, 9.1723243,
                                           10.170032, 11.168765, 12.168070, 13.167693, 14.167488,
                                           15.167379};
constexpr double kUniversalVariance[17] = {0, 0, 0, 0, 0, 0,
                                           2.954, 3.125, 3.238, 3.311, 3.356, 3.384,
                                           3.401, 3.410, 3.416, 3.419, 3.421};

std::vector<double> universal_test(const Bits& eps, std::string& detail) {
    const std::size_t n = eps.size();
    if (n < kUniversalMinBits) {
        detail = "needs at least 387840 bits";
        return not_applicable();
    }
    int l = 6;
    for (const auto& row : kUniversalRows) {
        if (n >= row.min_bits) {
            l = row.l;
            break;
        }
    }
    const std::size_t q = 10u * (1u << l);
    const std::size_t k = n / static_cast<std::size_t>(l) - q;
    std::vector<std::size_t> table(1u << l, 0);
    auto block_value = [&](std::size_t i) {  // i is 1-based
        std::size_t dec = 0;
        const std::size_t base = (i - 1) * static_cast<std::size_t>(l);
        for (int j = 0; j < l; ++j) dec = (dec << 1) | eps[base + static_cast<std::size_t>(j)];
        return dec;
    };
    for (std::size_t i = 1; i <= q; ++i) table[block_value(i)] = i;
    double sum = 0.0;
    for (std::size_t i = q + 1; i <= q + k; ++i) {
        const std::size_t dec = block_value(i);
        sum += std::log2(static_cast<double>(i - table[dec]));
        table[dec] = i;
    }
    const double fn = sum / static_cast<double>(k);
    const double c = 0.7 - 0.8 / l +
                     (4.0 + 32.0 / l) * std::pow(static_cast<double>(k), -3.0 / l) / 15.0;
    const double sigma = c * std::sqrt(kUniversalVariance[l] / static_cast<double>(k));
    detail = "L=" + std::to_string(l) + " Q=" + std::to_string(q) + " K=" + std::to_string(k);
    return {erfc(std::abs(fn - kUniversalExpected[l]) / (std::sqrt(2.0) * sigma))};
}

// ------------------------------------------------------- linear complexity

constexpr double kLinearComplexityPi[7] = {0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};

std::vector<double> linear_complexity_test(const Bits& eps, std::size_t m, std::string& detail) {
    const std::size_t n = eps.size();
    const std::size_t blocks = n / m;
    if (blocks < 1) {
        detail = "needs at least one full block of length M=" + std::to_string(m);
        return not_applicable();
    }
    const double md = static_cast<double>(m);
    const double mu = md / 2.0 + (9.0 + ((m % 2 == 0) ? -1.0 : 1.0)) / 36.0 -
                      (md / 3.0 + 2.0 / 9.0) / std::pow(2.0, md);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    std::vector<std::size_t> complexities(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(blocks); ++i) {
        const std::size_t off = static_cast<std::size_t>(i) * m;
        complexities[static_cast<std::size_t>(i)] =
            berlekamp_massey(std::vector<std::uint8_t>(eps.begin() + off, eps.begin() + off + m));
    }
    std::size_t nu[7] = {0, 0, 0, 0, 0, 0, 0};
    for (std::size_t L : complexities) {
        const double t = sign * (static_cast<double>(L) - mu) + 2.0 / 9.0;
        int cls;
        if (t <= -2.5) cls = 0;
        else if (t <= -1.5) cls = 1;
        else if (t <= -0.5) cls = 2;
        else if (t <= 0.5) cls = 3;
        else if (t <= 1.5) cls = 4;
        else if (t <= 2.5) cls = 5;
        else cls = 6;
        ++nu[cls];
    }
    double chi = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double expect = static_cast<double>(blocks) * kLinearComplexityPi[i];
        chi += (static_cast<double>(nu[i]) - expect) * (static_cast<double>(nu[i]) - expect) / expect;
    }
    detail = "M=" + std::to_string(m) + " N=" + std::to_string(blocks);
    return {igamc(3.0, chi / 2.0)};
}

// ---------------------------------------------------------------- serial

// Counts of the 2^m overlapping m-bit patterns, read cyclically.
std::vector<std::int64_t> pattern_counts(const Bits& eps, std::size_t m) {
    const std::size_t n = eps.size();
    std::vector<std::int64_t> counts(std::size_t{1} << m, 0);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j) idx = (idx << 1) | eps[j % n];
    ++counts[idx];
    const std::size_t mask = (std::size_t{1} << m) - 1;
    for (std::size_t j = 1; j < n; ++j) {
        idx = ((idx << 1) | eps[(j + m - 1) % n]) & mask;
        ++counts[idx];
    }
    return counts;
}

double psi_squared(const Bits& eps, std::size_t m) {
    if (m == 0) return 0.0;
    const std::size_t n = eps.size();
    const auto counts = pattern_counts(eps, m);
    double sum = 0.0;
    for (std::int64_t c : counts) sum += static_cast<double>(c) * static_cast<double>(c);
    return sum * std::pow(2.0, static_cast<double>(m)) / static_cast<double>(n) -
           static_cast<double>(n);
}

std::vector<double> serial_test(const Bits& eps, std::size_t m, std::string& detail) {
    const std::size_t n = eps.size();
    if (m < 2 || n < m) {
        detail = "needs pattern length >= 2 and n >= m";
        return not_applicable();
    }
    const double psi_m = psi_squared(eps, m);
    const double psi_m1 = psi_squared(eps, m - 1);
    const double psi_m2 = psi_squared(eps, m - 2);
    const double del1 = psi_m - psi_m1;
    const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
    std::ostringstream d;
    d << "m=" << m << " del1=" << del1 << " del2=" << del2;
    if (static_cast<double>(m) >= std::log2(static_cast<double>(n)) - 2.0) {
        d << " (m outside the recommended range)";
    }
    detail = d.str();
    return {igamc(std::pow(2.0, static_cast<double>(m) - 2.0), del1 / 2.0),
            igamc(std::pow(2.0, static_cast<double>(m) - 3.0), del2 / 2.0)};
}

double phi(const Bits& eps, std::size_t m) {
    if (m == 0) return 0.0;
    const std::size_t n = eps.size();
    const auto counts = pattern_counts(eps, m);
    double sum = 0.0;
    for (std::int64_t c : counts) {
        if (c > 0) {
            const double cd = static_cast<double>(c);
            sum += cd * std::log(cd / static_cast<double>(n));
        }
    }
    return sum / static_cast<double>(n);
}

std::vector<double> approximate_entropy_test(const Bits& eps, std::size_t m, std::string& detail) {
    const std::size_t n = eps.size();
    if (n < m + 1) {
        detail = "needs n > m";
        return not_applicable();
    }
    const double apen = phi(eps, m) - phi(eps, m + 1);
    const double chi = 2.0 * static_cast<double>(n) * (std::log(2.0) - apen);
    std::ostringstream d;
    d << "m=" << m << " ApEn=" << apen;
    detail = d.str();
    return {igamc(std::pow(2.0, static_cast<double>(m) - 1.0), chi / 2.0)};
}

// ---------------------------------------------------------------- cusum

std::vector<double> cusum_test(const Bits& eps, bool forward, std::string& detail) {
    const std::int64_t n = static_cast<std::int64_t>(eps.size());
    if (n < 2) {
        detail = "needs at least 2 bits";
        return not_applicable();
    }
    std::int64_t sum = 0, z = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        const std::size_t idx = forward ? static_cast<std::size_t>(i)
                                        : static_cast<std::size_t>(n - 1 - i);
        sum += 2 * static_cast<std::int64_t>(eps[idx]) - 1;
        z = std::max(z, std::abs(sum));
    }
    const double zd = static_cast<double>(z);
    const double sqn = std::sqrt(static_cast<double>(n));
    double sum1 = 0.0;
    for (std::int64_t k = ((-n / z) + 1) / 4; k <= ((n / z) - 1) / 4; ++k) {
        sum1 += normal_cdf((4.0 * k + 1.0) * zd / sqn) - normal_cdf((4.0 * k - 1.0) * zd / sqn);
    }
    double sum2 = 0.0;
    for (std::int64_t k = ((-n / z) - 3) / 4; k <= ((n / z) - 1) / 4; ++k) {
        sum2 += normal_cdf((4.0 * k + 3.0) * zd / sqn) - normal_cdf((4.0 * k + 1.0) * zd / sqn);
    }
    detail = "z=" + std::to_string(z);
    return {1.0 - sum1 + sum2};
}

// ---------------------------------------------------------------- excursions

struct WalkStats {
    std::size_t cycles = 0;
    // per-cycle visit tallies for states -4..-1,1..4: nu[state][count 0..5+]
    std::size_t nu[8][6] = {};
    // total visits for states -9..-1,1..9 (index x+9, slot 9 unused)
    std::size_t totals[19] = {};
};

int state_slot(int x) { return x < 0 ? x + 4 : x + 3; }  // -4..-1,1..4 -> 0..7

WalkStats walk_stats(const Bits& eps) {
    WalkStats st;
    int counter[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    auto close_cycle = [&]() {
        for (int s = 0; s < 8; ++s) {
            ++st.nu[s][std::min(counter[s], 5)];
            counter[s] = 0;
        }
        ++st.cycles;
    };
    std::int64_t s = 0;
    for (std::uint8_t b : eps) {
        s += b ? 1 : -1;
        if (s != 0 && s >= -9 && s <= 9) ++st.totals[s + 9];
        if (s != 0 && s >= -4 && s <= 4) ++counter[state_slot(static_cast<int>(s))];
        if (s == 0) close_cycle();
    }
    if (s != 0) close_cycle();
    return st;
}

bool excursions_applicable(const WalkStats& st, std::size_t n) {
    const double constraint = std::max(0.005 * std::sqrt(static_cast<double>(n)), 500.0);
    return static_cast<double>(st.cycles) >= constraint;
}

std::vector<double> random_excursions_test(const Bits& eps, std::string& detail) {
    const WalkStats st = walk_stats(eps);
    detail = "J=" + std::to_string(st.cycles);
    if (!excursions_applicable(st, eps.size())) {
        detail += " (< max(0.005*sqrt(n), 500) cycles)";
        return not_applicable();
    }
    std::vector<double> pvals;
    const double j = static_cast<double>(st.cycles);
    for (int x : {-4, -3, -2, -1, 1, 2, 3, 4}) {
        const double ax = std::abs(x);
        double pi[6];
        pi[0] = 1.0 - 1.0 / (2.0 * ax);
        for (int k = 1; k <= 4; ++k) {
            pi[k] = 1.0 / (4.0 * ax * ax) * std::pow(1.0 - 1.0 / (2.0 * ax), k - 1);
        }
        pi[5] = 1.0 / (2.0 * ax) * std::pow(1.0 - 1.0 / (2.0 * ax), 4.0);
        double chi = 0.0;
        for (int k = 0; k < 6; ++k) {
            const double expect = j * pi[k];
            const double obs = static_cast<double>(st.nu[state_slot(x)][k]);
            chi += (obs - expect) * (obs - expect) / expect;
        }
        pvals.push_back(igamc(2.5, chi / 2.0));
    }
    return pvals;
}

std::vector<double> random_excursions_variant_test(const Bits& eps, std::string& detail) {
    const WalkStats st = walk_stats(eps);
    detail = "J=" + std::to_string(st.cycles);
    if (!excursions_applicable(st, eps.size())) {
        detail += " (< max(0.005*sqrt(n), 500) cycles)";
        return not_applicable();
    }
    std::vector<double> pvals;
    const double j = static_cast<double>(st.cycles);
    for (int x = -9; x <= 9; ++x) {
        if (x == 0) continue;
        const double xi = static_cast<double>(st.totals[x + 9]);
        pvals.push_back(erfc(std::abs(xi - j) / std::sqrt(2.0 * j * (4.0 * std::abs(x) - 2.0))));
    }
    return pvals;
}

}  // namespace

int gf2_rank(std::vector<std::uint32_t> rows) {
    int rank = 0;
    const int n = static_cast<int>(rows.size());
    for (int bit = 31; bit >= 0 && rank < n; --bit) {
        const std::uint32_t mask = 1u << bit;
        int pivot = -1;
        for (int r = rank; r < n; ++r) {
            if (rows[static_cast<std::size_t>(r)] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < n; ++r) {
            if (r != rank && (rows[static_cast<std::size_t>(r)] & mask)) {
                rows[static_cast<std::size_t>(r)] ^= rows[static_cast<std::size_t>(rank)];
            }
        }
        ++rank;
    }
    return rank;
}

std::size_t berlekamp_massey(const std::vector<std::uint8_t>& bits) {
    const std::size_t n = bits.size();
    std::vector<std::uint8_t> c(n + 1, 0), b(n + 1, 0);
    c[0] = b[0] = 1;
    std::size_t L = 0;
    std::ptrdiff_t m = -1;
    for (std::size_t t = 0; t < n; ++t) {
        int d = bits[t];
        for (std::size_t i = 1; i <= L; ++i) d ^= c[i] & bits[t - i];
        if (d) {
            const std::vector<std::uint8_t> tmp = c;
            const std::size_t shift = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t) - m);
            for (std::size_t i = 0; i + shift <= n; ++i) c[i + shift] ^= b[i];
            if (2 * L <= t) {
                L = t + 1 - L;
                m = static_cast<std::ptrdiff_t>(t);
                b = tmp;
            }
        }
    }
    return L;
}

TestParams TestParams::defaults_for(TestKind kind) {
    TestParams p;
    switch (kind) {
        case TestKind::kBlockFrequency: p.block_length = 128; break;
        case TestKind::kLinearComplexity: p.block_length = 500; break;
        case TestKind::kSerial: p.pattern_length = 16; break;
        case TestKind::kApproximateEntropy: p.pattern_length = 10; break;
        case TestKind::kNonOverlappingTemplate:
        case TestKind::kOverlappingTemplate:
            p.template_bits = {0, 0, 0, 0, 0, 0, 0, 0, 1};
            break;
        default: break;
    }
    return p;
}

Verdict verdict_for(const std::vector<double>& p_values) {
    if (p_values.empty()) return Verdict::kNotApplicable;
    for (double p : p_values) {
        if (!(p >= kAlpha)) return Verdict::kFail;
    }
    return Verdict::kPass;
}

TestResult run_test(TestKind kind, const BitStream& bits, const TestParams& params) {
    if (bits.bit_length() == 0) throw EmptyInput("bitstream is empty");
    const Bits eps = bits.unpacked();
    TestResult result;
    result.kind = kind;
    std::string detail;

    switch (kind) {
        case TestKind::kFrequency:
            result.p_values = frequency_test(eps, detail);
            break;
        case TestKind::kBlockFrequency: {
            const std::size_t m = params.block_length ? params.block_length : 128;
            if (m < 1) throw InvalidParams("block length must be >= 1");
            result.p_values = block_frequency_test(eps, m, detail);
            break;
        }
        case TestKind::kRuns:
            result.p_values = runs_test(eps, detail);
            break;
        case TestKind::kLongestRun:
            result.p_values = longest_run_test(eps, detail);
            break;
        case TestKind::kBinaryMatrixRank:
            result.p_values = rank_test(eps, detail);
            break;
        case TestKind::kDftSpectral:
            result.p_values = dft_test(eps, detail);
            break;
        case TestKind::kNonOverlappingTemplate: {
            auto tpl = params.template_bits.empty()
                           ? TestParams::defaults_for(kind).template_bits
                           : params.template_bits;
            if (tpl.size() < 2 || tpl.size() > 16) {
                throw InvalidParams("template length must be in [2, 16]");
            }
            result.p_values = non_overlapping_test(eps, tpl, detail);
            break;
        }
        case TestKind::kOverlappingTemplate: {
            const std::size_t m = params.template_bits.empty() ? 9 : params.template_bits.size();
            if (m < 2 || m > 16) throw InvalidParams("template length must be in [2, 16]");
            result.p_values = overlapping_test(eps, m, detail);
            break;
        }
        case TestKind::kUniversal:
            result.p_values = universal_test(eps, detail);
            break;
        case TestKind::kLinearComplexity: {
            const std::size_t m = params.block_length ? params.block_length : 500;
            if (m < 4) throw InvalidParams("linear complexity block length must be >= 4");
            result.p_values = linear_complexity_test(eps, m, detail);
            break;
        }
        case TestKind::kSerial: {
            const std::size_t m = params.pattern_length ? params.pattern_length : 16;
            if (m > 25) throw InvalidParams("serial pattern length must be <= 25");
            result.p_values = serial_test(eps, m, detail);
            break;
        }
        case TestKind::kApproximateEntropy: {
            const std::size_t m = params.pattern_length ? params.pattern_length : 10;
            if (m < 1 || m > 24) throw InvalidParams("approximate entropy m must be in [1, 24]");
            result.p_values = approximate_entropy_test(eps, m, detail);
            break;
        }
        case TestKind::kCusumForward:
            result.p_values = cusum_test(eps, true, detail);
            break;
        case TestKind::kCusumBackward:
            result.p_values = cusum_test(eps, false, detail);
            break;
        case TestKind::kRandomExcursions:
            result.p_values = random_excursions_test(eps, detail);
            break;
        case TestKind::kRandomExcursionsVariant:
            result.p_values = random_excursions_variant_test(eps, detail);
            break;
    }
    result.detail = detail;
    result.verdict = verdict_for(result.p_values);
    return result;
}

}  // namespace srng::nist
