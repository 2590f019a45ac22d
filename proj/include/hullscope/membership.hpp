#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hullscope/point_set.hpp"

namespace hullscope {

/// Slack and stopping parameters for hull-membership tests.
///
/// A query counts as inside the hull when its distance to the hull is at most
/// `band(scale) = tau_abs + tau_rel * scale`, with
/// `scale = max(1, |x|, max_i |x_i|)`. Zero values of `max_iter` and `gap_tol`
/// select the size-dependent defaults (see resolved_max_iter / resolved_gap_tol).
struct Tolerance {
    double tau_abs = 1e-9;
    double tau_rel = 1e-7;
    std::size_t max_iter = 0;
    double gap_tol = 0.0;

    double band(double scale) const { return tau_abs + tau_rel * scale; }
    std::size_t resolved_max_iter(std::size_t n_points, std::size_t dim) const;
    double resolved_gap_tol(double scale) const;

    /// Throws InvalidInput on negative slacks or a negative gap tolerance.
    void validate() const;
};

enum class Status { Interpolation, Extrapolation };

const char* to_string(Status status);

/// How far the solver runs.
enum class StopRule {
    /// Run until the Frank-Wolfe duality gap drops below gap_tol (accurate distance).
    Converge,
    /// Stop as soon as the verdict is certified: either the iterate lies within the slack
    /// band of x, or the current residual direction strictly separates x from every sample
    /// with a lower distance bound above the band. `distance` is then the current
    /// iterate's distance, an upper bound on the true one.
    Certificate,
};

struct HullDistance {
    double distance = 0.0;
    std::vector<double> coefficients;  // length N, on the probability simplex
    double gap = 0.0;                  // Frank-Wolfe duality gap at termination
    std::size_t iterations = 0;
    bool converged = false;
};

struct MembershipResult {
    Status status = Status::Extrapolation;
    double distance = 0.0;
    std::optional<std::vector<double>> coefficients;  // present iff Interpolation
    std::optional<std::vector<double>> witness;       // unit direction, present iff Extrapolation
    std::size_t iterations = 0;
    bool converged = false;
    double scale = 1.0;
    double band = 0.0;
};

/// max(1, |x|, max_i |x_i|).
double membership_scale(const PointSet& X, std::span<const double> x);

/// Distance from x to Hull(X) with the minimizing convex weights.
///
/// Minimizes 0.5 |X^T lambda - x|^2 over the probability simplex, starting from the vertex
/// nearest to x. Up to 64 dimensions this runs Wolfe's minimum-norm-point method; above that,
/// away-step Frank-Wolfe with exact line search, falling back to Wolfe's method if it stalls.
HullDistance hull_distance(const PointSet& X, std::span<const double> x,
                           const Tolerance& tol = {});

/// Interpolation iff the distance to Hull(X) is within the slack band.
MembershipResult test_membership(const PointSet& X, std::span<const double> x,
                                 const Tolerance& tol = {},
                                 StopRule rule = StopRule::Converge);

struct ConvexPositionCount {
    std::size_t in_hull_count = 0;
    std::vector<bool> flags;  // flags[i]: row i lies in the hull of the other rows
    std::size_t nonconverged = 0;

    bool in_convex_position() const { return in_hull_count == 0; }
};

/// Leave-one-out membership of every row against the others (N >= 2).
/// `workers` = 0 uses the hardware concurrency; the result does not depend on it.
ConvexPositionCount convex_position_count(const PointSet& X, const Tolerance& tol = {},
                                          std::size_t workers = 1);

}  // namespace hullscope
