#include <cmath>
#include <limits>

#include "srng/errors.hpp"
#include "srng/nist.hpp"

namespace srng::nist {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 2000000;

// Lower regularized incomplete gamma P(a,x) by power series; valid x < a+1.
double igam_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a,x) by continued fraction (modified
// Lentz); valid x >= a+1.
double igamc_fraction(double a, double x) {
    constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double erfc(double x) { return std::erfc(x); }

double igamc(double a, double x) {
    if (!(a > 0.0)) throw DomainError("igamc requires a > 0");
    if (x < 0.0) throw DomainError("igamc requires x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        const double p = igam_series(a, x);
        return p >= 1.0 ? 0.0 : 1.0 - p;
    }
    return igamc_fraction(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace srng::nist
