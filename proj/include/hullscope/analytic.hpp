#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include <gmpxx.h>

namespace hullscope {

/// A probability held as a reduced fraction of arbitrary-precision integers.
struct ExactProbability {
    mpq_class value;
    double float_value = 0.0;  // correctly rounded (round-to-nearest) quotient

    static ExactProbability from(mpq_class q);

    /// "p/q" (or "p" when the denominator is 1).
    std::string exact() const;
};

/// Probability that n uniform points in a parallelogram are in convex position,
/// (C(2n-2, n-1) / n!)^2. Requires n >= 3.
ExactProbability valtr_parallelogram(std::size_t n);

/// Same for a triangle: 2^n (3n-3)! / ((n-1)!^3 (2n)!). Requires n >= 3.
ExactProbability valtr_triangle(std::size_t n);

/// Probability that the origin lies outside the hull of N i.i.d. symmetric points in R^d:
/// 2^(1-N) sum_{k<d} C(N-1, k), equal to 1 when N <= d.
ExactProbability wendel(std::size_t n_points, std::size_t dim);

struct BaranyThreshold {
    double value = 0.0;  // 2^(d/2) / d, +inf when not representable
    double log2_value = 0.0;
};

/// Dataset size 2^(d/2)/d separating the two regimes of the hyperball limit.
BaranyThreshold barany_threshold(std::size_t dim);

enum class LimitRegime { Zero, One, Indeterminate };

const char* to_string(LimitRegime regime);

/// Asymptotic (d -> infinity) interpolation probability indicator for uniform hyperball data:
/// One if N > 2^(d/2)/d, Zero if N < 2^(d/2)/d, Indeterminate at equality. This is a regime
/// label for the limit, not a probability at finite d. Compared exactly as (N d)^2 vs 2^d.
LimitRegime barany_limit(std::size_t n_points, std::size_t dim);

struct QuadratureConfig {
    std::size_t nodes = 200;
    double imag_tol = 1e-8;
    bool refine = true;

    void validate() const;
};

/// g_n(r) = (1/sqrt(2 pi)) integral Phi^n(sqrt(r) x) exp(-x^2/2) dx with sqrt(r) = i sqrt(-r)
/// for r < 0, by Gauss-Hermite quadrature. For r < 0 the variable is stretched by
/// 1/sqrt(1 - n|r|) so the integrand's Gaussian growth is absorbed into the weight; this
/// requires n|r| < 1. With cfg.refine the node count doubles until two successive values
/// agree to 1e-10 (QuadratureError after 4 doublings). When the Gaussian weight is much wider
/// than Phi's unit-scale features (sqrt(2 r) or sqrt(2 sigma^2) above 4) the integral is taken
/// in the argument of Phi by exp-sinh quadrature instead.
std::complex<double> g_function(std::size_t n, double r, const QuadratureConfig& cfg = {});

struct AbsorptionParams {
    std::size_t n_points = 0;  // N >= d + 1
    std::size_t dim = 0;
    double sigma_sq = 0.0;
};

/// Probability that x ~ N(0, sigma^2 I_d) falls outside the hull of N i.i.d. N(0, I_d) points:
/// 2 (b_{N,d-1} + b_{N,d-3} + ...), b_{n,k} = C(n,k) g_k(-s_k) g_{n-k}(s_k), s_k = sigma^2/(1 + k sigma^2).
double gaussian_extrapolation_prob(const AbsorptionParams& p, const QuadratureConfig& cfg = {});

/// ceil(24 / (3 eps^2 - 2 eps^3) * ln N). Requires N >= 2 and 0 < eps < 1.
std::size_t jll_dimension(std::size_t n_points, double epsilon);

/// Same bound with ln N supplied directly (for N too large to represent).
std::size_t jll_dimension_from_log(double log_n_points, double epsilon);

struct JllDilemma {
    std::size_t dim = 0;
    double epsilon = 0.0;
    double log2_n_points = 0.0;  // N = 2^dim
    std::size_t jll_dim = 0;
    bool dilemma = false;  // jll_dim > dim: the projection cannot reduce dimension
};

JllDilemma jll_dilemma(std::size_t dim, double epsilon);

}  // namespace hullscope
