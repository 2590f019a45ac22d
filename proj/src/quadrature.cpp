#include "hullscope/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>

#include <Eigen/Eigenvalues>

#include "hullscope/errors.hpp"

namespace hullscope {

namespace {

struct Evaluation {
    double value;       // scaled p_n(z)
    double derivative;  // scaled p_n'(z)
    double log_scale;   // true values are the scaled ones times exp(log_scale)
};

// Orthonormal Hermite recurrence (weight exp(-t^2)), rescaled whenever it grows large.
Evaluation evaluate(std::size_t n, double z) {
    constexpr double kBig = 1e200;
    constexpr double kShrink = 1e-200;
    const double log_shrink = std::log(kBig);
    double p1 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
    double p2 = 0.0;
    double log_scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = z * std::sqrt(2.0 / (jd + 1.0)) * p2 - std::sqrt(jd / (jd + 1.0)) * p3;
        if (std::abs(p1) > kBig) {
            p1 *= kShrink;
            p2 *= kShrink;
            log_scale += log_shrink;
        }
    }
    return {p1, std::sqrt(2.0 * static_cast<double>(n)) * p2, log_scale};
}

}  // namespace

GaussHermiteRule compute_gauss_hermite(std::size_t n) {
    if (n == 0) throw DomainError("Gauss-Hermite rule needs at least one node");
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double nd = static_cast<double>(n);
    // Golub-Welsch: the roots are the eigenvalues of the symmetric tridiagonal Jacobi matrix
    // with zero diagonal and off-diagonal sqrt(k/2). Each is then polished by Newton steps on
    // the recurrence, which also yields the weight 2 / p_n'(z)^2.
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd off(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
    for (Eigen::Index k = 0; k < off.size(); ++k) off(k) = std::sqrt(static_cast<double>(k + 1) / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diagonal, off, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& roots = solver.eigenvalues();  // ascending

    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::abs(roots(static_cast<Eigen::Index>(n - 1 - i)));
        if (n % 2 == 1 && i == half - 1) z = 0.0;
        for (int iter = 0; iter < 3 && z != 0.0; ++iter) {
            const Evaluation e = evaluate(n, z);
            const double step = e.value / e.derivative;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::abs(z)) break;
        }
        const Evaluation e = evaluate(n, z);
        const double log_weight = std::log(2.0) - 2.0 * (std::log(std::abs(e.derivative)) + e.log_scale);
        const double weight = std::exp(log_weight);
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = weight;
        rule.weights[n - 1 - i] = weight;
    }
    return rule;
}

const GaussHermiteRule& gauss_hermite(std::size_t n) {
    static std::shared_mutex mutex;
    static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return *it->second;
    }
    auto rule = std::make_unique<GaussHermiteRule>(compute_gauss_hermite(n));
    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.try_emplace(n, std::move(rule));
    return *it->second;
}

}  // namespace hullscope
