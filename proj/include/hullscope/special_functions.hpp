#pragma once

#include <complex>

namespace hullscope {

/// Standard normal CDF, Phi(u) = 0.5 * erfc(-u / sqrt(2)).
double normal_cdf(double u);

/// Imaginary error function erfi(x) = -i erf(ix) = (2/sqrt(pi)) * integral_0^x exp(t^2) dt.
/// Power series (all terms positive) for |x| <= 6, asymptotic expansion beyond.
/// Overflows to +-inf past |x| ~ 26.6.
double erfi(double x);

/// Dawson's integral F(x) = (sqrt(pi)/2) exp(-x^2) erfi(x); finite for all x.
double dawson(double x);

/// Phi(i y) exp(-y^2 / 2): the normal CDF continued to the imaginary axis, damped by the
/// Gaussian factor so the value stays bounded (|.| <= 1/2 + O(1/y)).
std::complex<double> damped_normal_cdf_imag(double y);

}  // namespace hullscope
