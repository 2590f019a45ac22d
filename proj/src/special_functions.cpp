#include "hullscope/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hullscope {

namespace {

constexpr double kSeriesLimit = 6.0;
const double kTwoOverSqrtPi = 2.0 / std::sqrt(std::numbers::pi);

// sum_{n>=0} x^(2n+1) / (n! (2n+1)); erfi(x) = (2/sqrt(pi)) * series.
double erfi_series(double x) {
    const double x2 = x * x;
    double power = x;  // x^(2n+1) / n!
    double sum = x;
    for (int n = 1; n < 500; ++n) {
        power *= x2 / n;
        const double term = power / (2 * n + 1);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// sum_k (2k-1)!! / (2x^2)^k, truncated at the smallest term; erfi(x) ~ exp(x^2)/(x sqrt(pi)) * this.
double asymptotic_tail(double x) {
    const double inv = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2 * k - 1) * inv;
        if (next >= term) break;
        term = next;
        sum += term;
        if (term <= 1e-17 * sum) break;
    }
    return sum;
}

}  // namespace

double normal_cdf(double u) {
    return 0.5 * std::erfc(-u / std::numbers::sqrt2);
}

double erfi(double x) {
    const double ax = std::abs(x);
    if (ax <= kSeriesLimit) return kTwoOverSqrtPi * erfi_series(x);
    const double x2 = ax * ax;
    if (x2 > 709.0) return std::copysign(std::numeric_limits<double>::infinity(), x);
    const double value = std::exp(x2) / (ax * std::sqrt(std::numbers::pi)) * asymptotic_tail(ax);
    return std::copysign(value, x);
}

double dawson(double x) {
    const double ax = std::abs(x);
    if (ax <= kSeriesLimit) return std::exp(-x * x) * erfi_series(x);
    return std::copysign(asymptotic_tail(ax) / (2.0 * ax), x);
}

std::complex<double> damped_normal_cdf_imag(double y) {
    // Phi(iy) = 1/2 + (i/2) erfi(y / sqrt 2) and exp(-y^2/2) erfi(y/sqrt 2) = (2/sqrt pi) F(y/sqrt 2).
    const double z = y / std::numbers::sqrt2;
    return {0.5 * std::exp(-0.5 * y * y), dawson(z) / std::sqrt(std::numbers::pi)};
}

}  // namespace hullscope
