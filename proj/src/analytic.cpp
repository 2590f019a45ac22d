#include "hullscope/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <mpfr.h>

#include "hullscope/errors.hpp"
#include "hullscope/quadrature.hpp"
#include "hullscope/special_functions.hpp"

namespace hullscope {

namespace {

mpz_class factorial(std::size_t n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

mpz_class binomial(std::size_t n, std::size_t k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

double correctly_rounded(const mpq_class& q) {
    mpfr_t tmp;
    mpfr_init2(tmp, 53);
    mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
    const double out = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
}

double log_binomial(std::size_t n, std::size_t k) {
    const mpz_class c = binomial(n, k);
    mpfr_t tmp;
    mpfr_init2(tmp, 128);
    mpfr_set_z(tmp, c.get_mpz_t(), MPFR_RNDN);
    mpfr_log(tmp, tmp, MPFR_RNDN);
    const double out = mpfr_get_d(tmp, MPFR_RNDN);
    mpfr_clear(tmp);
    return out;
}

std::complex<double> ipow(std::complex<double> base, std::size_t exponent) {
    std::complex<double> result{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

// Gauss-Hermite samples the integrand on the scale of the Gaussian weight; once that weight is
// much wider than the unit-scale features of Phi the rule undersamples them.
constexpr double kWideSlope = 4.0;

// Slope of the quadrature variable t -> argument of Phi (x = sqrt 2 t, stretched for r < 0).
double quadrature_slope(std::size_t n, double r) {
    if (r >= 0.0) return std::sqrt(2.0 * r);
    const double s = -r;
    return std::sqrt(2.0 * s / (1.0 - static_cast<double>(n) * s));
}

// Wide-weight form in y = |sqrt(r)| x, integrated on [0, inf) by exp-sinh quadrature.
//   r >= 0: g = 1/2 + (2 pi r)^(-1/2) int_0^inf (Phi^n(y) + Phi^n(-y) - 1) exp(-y^2 / 2r) dy
//   r < 0:  g = 2 (2 pi s)^(-1/2) int_0^inf Re[(Phi(iy) exp(-y^2/2))^n] exp(-y^2 / 2 v) dy,
//           s = -r, v = s / (1 - n s)
std::complex<double> g_wide(std::size_t n, double r) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double nd = static_cast<double>(n);
    const double inf = std::numeric_limits<double>::infinity();
    if (r >= 0.0) {
        auto f = [&](double y) {
            const double upper = std::expm1(nd * std::log1p(-normal_cdf(-y)));
            const double lower = std::pow(normal_cdf(-y), nd);
            return (upper + lower) * std::exp(-y * y / (2.0 * r));
        };
        const double integral = integrator.integrate(f, 0.0, inf, 1e-13);
        return {0.5 + integral / std::sqrt(2.0 * std::numbers::pi * r), 0.0};
    }
    const double s = -r;
    const double variance = s / (1.0 - nd * s);
    auto f = [&](double y) {
        return ipow(damped_normal_cdf_imag(y), n).real() * std::exp(-y * y / (2.0 * variance));
    };
    const double integral = integrator.integrate(f, 0.0, inf, 1e-13);
    return {2.0 * integral / std::sqrt(2.0 * std::numbers::pi * s), 0.0};
}

std::complex<double> g_at_nodes(std::size_t n, double r, std::size_t nodes) {
    const GaussHermiteRule& rule = gauss_hermite(nodes);
    const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
    if (r >= 0.0) {
        const double slope = std::sqrt(2.0 * r);
        double sum = 0.0;
        for (std::size_t j = 0; j < nodes; ++j) {
            if (rule.weights[j] == 0.0) continue;
            sum += rule.weights[j] * std::pow(normal_cdf(slope * rule.nodes[j]), static_cast<double>(n));
        }
        return {sum * inv_sqrt_pi, 0.0};
    }
    // x = stretch * sqrt(2) t turns Phi(i sqrt(s) x)^n exp(-x^2/2) into
    // (Phi(iy) exp(-y^2/2))^n exp(-t^2) with y = sqrt(s) * stretch * sqrt(2) t.
    const double s = -r;
    const double shrink = 1.0 - static_cast<double>(n) * s;
    if (!(shrink > 0.0)) {
        throw DomainError("g_n(r) diverges for n|r| >= 1 (n = " + std::to_string(n) +
                          ", r = " + std::to_string(r) + ")");
    }
    const double stretch = 1.0 / std::sqrt(shrink);
    const double slope = std::sqrt(2.0 * s) * stretch;
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < nodes; ++j) {
        if (rule.weights[j] == 0.0) continue;
        sum += rule.weights[j] * ipow(damped_normal_cdf_imag(slope * rule.nodes[j]), n);
    }
    return sum * (stretch * inv_sqrt_pi);
}

}  // namespace

ExactProbability ExactProbability::from(mpq_class q) {
    q.canonicalize();
    if (q < 0 || q > 1) throw DomainError("probability outside [0, 1]: " + q.get_str());
    ExactProbability out;
    out.value = std::move(q);
    out.float_value = correctly_rounded(out.value);
    return out;
}

std::string ExactProbability::exact() const {
    return value.get_str();
}

ExactProbability valtr_parallelogram(std::size_t n) {
    if (n < 3) throw DomainError("valtr_parallelogram needs n >= 3");
    mpq_class ratio(binomial(2 * n - 2, n - 1), factorial(n));
    ratio.canonicalize();
    return ExactProbability::from(ratio * ratio);
}

ExactProbability valtr_triangle(std::size_t n) {
    if (n < 3) throw DomainError("valtr_triangle needs n >= 3");
    mpz_class numerator;
    mpz_ui_pow_ui(numerator.get_mpz_t(), 2, n);
    numerator *= factorial(3 * n - 3);
    const mpz_class base = factorial(n - 1);
    const mpz_class denominator = base * base * base * factorial(2 * n);
    return ExactProbability::from(mpq_class(numerator, denominator));
}

ExactProbability wendel(std::size_t n_points, std::size_t dim) {
    if (n_points < 1 || dim < 1) throw DomainError("wendel needs N >= 1 and d >= 1");
    if (n_points <= dim) return ExactProbability::from(mpq_class(1));
    mpz_class sum = 0;
    for (std::size_t k = 0; k < dim; ++k) sum += binomial(n_points - 1, k);
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 2, n_points - 1);
    return ExactProbability::from(mpq_class(sum, denominator));
}

BaranyThreshold barany_threshold(std::size_t dim) {
    if (dim < 1) throw DomainError("barany_threshold needs d >= 1");
    BaranyThreshold out;
    const double d = static_cast<double>(dim);
    out.log2_value = d / 2.0 - std::log2(d);
    out.value = out.log2_value < 1023.0 ? std::exp2(d / 2.0) / d : std::numeric_limits<double>::infinity();
    if (!std::isfinite(out.value)) out.value = std::numeric_limits<double>::infinity();
    return out;
}

const char* to_string(LimitRegime regime) {
    switch (regime) {
        case LimitRegime::Zero: return "0";
        case LimitRegime::One: return "1";
        case LimitRegime::Indeterminate: return "indeterminate";
    }
    return "?";
}

LimitRegime barany_limit(std::size_t n_points, std::size_t dim) {
    if (n_points < 1 || dim < 1) throw DomainError("barany_limit needs N >= 1 and d >= 1");
    mpz_class lhs = mpz_class(static_cast<unsigned long>(n_points)) * static_cast<unsigned long>(dim);
    lhs *= lhs;
    mpz_class rhs;
    mpz_ui_pow_ui(rhs.get_mpz_t(), 2, dim);
    const int cmp = ::cmp(lhs, rhs);
    if (cmp > 0) return LimitRegime::One;
    if (cmp < 0) return LimitRegime::Zero;
    return LimitRegime::Indeterminate;
}

void QuadratureConfig::validate() const {
    if (nodes < 32) throw DomainError("quadrature needs at least 32 nodes");
    if (!(imag_tol > 0.0)) throw DomainError("imag_tol must be positive");
}

std::complex<double> g_function(std::size_t n, double r, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(r)) throw DomainError("g_function argument must be finite");
    if (n == 0) return {1.0, 0.0};
    if (r < 0.0 && static_cast<double>(n) * -r >= 1.0) {
        throw DomainError("g_n(r) diverges for n|r| >= 1");
    }
    if (quadrature_slope(n, r) > kWideSlope) return g_wide(n, r);
    std::complex<double> value = g_at_nodes(n, r, cfg.nodes);
    if (!cfg.refine) return value;
    std::size_t nodes = cfg.nodes;
    for (int doubling = 0; doubling < 4; ++doubling) {
        nodes *= 2;
        const std::complex<double> next = g_at_nodes(n, r, nodes);
        if (std::abs(next - value) <= 1e-10) return next;
        value = next;
    }
    throw QuadratureError("g_" + std::to_string(n) + "(" + std::to_string(r) +
                          ") did not stabilise after 4 node doublings");
}

double gaussian_extrapolation_prob(const AbsorptionParams& p, const QuadratureConfig& cfg) {
    if (p.dim < 1 || p.n_points < p.dim + 1) {
        throw DomainError("absorption formula needs d >= 1 and N >= d + 1");
    }
    if (!(p.sigma_sq >= 0.0) || !std::isfinite(p.sigma_sq)) {
        throw DomainError("sigma^2 must be finite and nonnegative");
    }
    cfg.validate();
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = p.dim - 1;; k -= 2) {
        const double r = p.sigma_sq / (1.0 + static_cast<double>(k) * p.sigma_sq);
        const std::complex<double> inner = g_function(k, -r, cfg);
        const std::complex<double> outer = g_function(p.n_points - k, r, cfg);
        if (inner != 0.0 && outer != 0.0) {
            sum += std::exp(log_binomial(p.n_points, k) + std::log(inner) + std::log(outer));
        }
        if (k < 2) break;
    }
    const std::complex<double> prob = 2.0 * sum;
    if (std::abs(prob.imag()) > cfg.imag_tol) {
        throw QuadratureError("imaginary residue " + std::to_string(prob.imag()) + " exceeds imag_tol");
    }
    const double value = prob.real();
    if (value < -1e-9 || value > 1.0 + 1e-9) {
        throw QuadratureError("extrapolation probability " + std::to_string(value) + " outside [0, 1]");
    }
    return std::clamp(value, 0.0, 1.0);
}

std::size_t jll_dimension_from_log(double log_n_points, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("JLL epsilon must lie in (0, 1)");
    if (!(log_n_points > 0.0) || !std::isfinite(log_n_points)) {
        throw DomainError("JLL bound needs N >= 2");
    }
    const double factor = 24.0 / (3.0 * epsilon * epsilon - 2.0 * epsilon * epsilon * epsilon);
    return static_cast<std::size_t>(std::ceil(factor * log_n_points));
}

std::size_t jll_dimension(std::size_t n_points, double epsilon) {
    if (n_points < 2) throw DomainError("JLL bound needs N >= 2");
    return jll_dimension_from_log(std::log(static_cast<double>(n_points)), epsilon);
}

JllDilemma jll_dilemma(std::size_t dim, double epsilon) {
    if (dim < 1) throw DomainError("jll_dilemma needs d >= 1");
    JllDilemma out;
    out.dim = dim;
    out.epsilon = epsilon;
    out.log2_n_points = static_cast<double>(dim);
    out.jll_dim = jll_dimension_from_log(static_cast<double>(dim) * std::numbers::ln2, epsilon);
    out.dilemma = out.jll_dim > dim;
    return out;
}

}  // namespace hullscope
