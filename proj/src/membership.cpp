#include "hullscope/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hullscope/errors.hpp"
#include "hullscope/parallel.hpp"

namespace hullscope {

namespace {

using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

constexpr std::size_t kMinNormMaxDim = 64;

enum class Exit { Gap, InsideBand, Separated, MaxIter, Degenerate };

struct SolverState {
    Eigen::VectorXd lambda;
    Eigen::VectorXd point;     // X^T lambda
    Eigen::VectorXd residual;  // point - x
    double gap = 0.0;
    std::size_t iterations = 0;
    Exit exit = Exit::MaxIter;
};

void check_inputs(const PointSet& X, std::span<const double> x) {
    if (X.n_points() == 0 || X.dim() == 0) {
        throw InvalidInput("empty point set");
    }
    if (x.size() != X.dim()) {
        throw DimensionError("query has dimension " + std::to_string(x.size()) +
                             " but the point set has dimension " + std::to_string(X.dim()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw InvalidInput("query contains non-finite entries");
    }
    if (!X.data().allFinite()) throw InvalidInput("point set contains non-finite entries");
}

void recompute_point(const Matrix& X, const std::vector<Eigen::Index>& active,
                     SolverState& s, const ConstVecMap& x) {
    s.point.setZero();
    for (Eigen::Index i : active) s.point.noalias() += s.lambda(i) * X.row(i).transpose();
    s.residual = s.point - x;
}

// Away-step Frank-Wolfe on f(lambda) = 0.5 |X^T lambda - x|^2 over the simplex.
// The gradient with respect to lambda_i is <x_i, r> with r = X^T lambda - x.
SolverState solve(const PointSet& points, std::span<const double> query, const Tolerance& tol,
                  double scale, StopRule rule) {
    const Matrix& X = points.data();
    const Eigen::Index n = X.rows();
    const ConstVecMap x(query.data(), static_cast<Eigen::Index>(query.size()));
    const double band = tol.band(scale);
    const double gap_tol = tol.resolved_gap_tol(scale);
    const std::size_t max_iter = tol.resolved_max_iter(points.n_points(), points.dim());

    SolverState s;
    s.lambda = Eigen::VectorXd::Zero(n);

    Eigen::Index start = 0;
    (X.rowwise() - x.transpose()).rowwise().squaredNorm().minCoeff(&start);
    s.lambda(start) = 1.0;
    std::vector<Eigen::Index> active{start};
    s.point = X.row(start).transpose();
    s.residual = s.point - x;

    Eigen::VectorXd grad(n);
    for (s.iterations = 0; s.iterations < max_iter; ++s.iterations) {
        if (s.iterations > 0 && s.iterations % 64 == 0) recompute_point(X, active, s, x);

        grad.noalias() = X * s.residual;
        const double at_point = s.point.dot(s.residual);
        Eigen::Index toward = 0;
        const double g_min = grad.minCoeff(&toward);
        s.gap = at_point - g_min;

        Eigen::Index away = active.front();
        for (Eigen::Index i : active) {
            if (grad(i) > grad(away)) away = i;
        }
        const double away_gap = grad(away) - at_point;
        const double dist2 = s.residual.squaredNorm();

        if (rule == StopRule::Certificate) {
            const double dist = std::sqrt(dist2);
            if (dist <= band) {
                s.exit = Exit::InsideBand;
                return s;
            }
            // For every hull point q: <x - q, -r> >= |r|^2 - gap, hence dist(x, hull) >= (|r|^2 - gap)/|r|.
            if (s.gap < dist2 && (dist2 - s.gap) / dist > band) {
                s.exit = Exit::Separated;
                return s;
            }
        }
        // Outside the band the gap must also drop below |r|^2 so the residual separates.
        if (dist2 == 0.0 || (s.gap <= gap_tol && (dist2 <= band * band || s.gap < dist2))) {
            s.exit = Exit::Gap;
            return s;
        }

        const bool forward = s.gap >= away_gap;
        Eigen::VectorXd direction = forward ? Eigen::VectorXd(X.row(toward).transpose() - s.point)
                                            : Eigen::VectorXd(s.point - X.row(away).transpose());
        const double dir2 = direction.squaredNorm();
        if (dir2 <= 0.0) {
            s.exit = Exit::Degenerate;
            return s;
        }
        double max_step = 1.0;
        if (!forward) {
            const double la = s.lambda(away);
            max_step = la / (1.0 - la);
        }
        const double step = std::clamp((forward ? s.gap : away_gap) / dir2, 0.0, max_step);

        if (forward) {
            if (step >= 1.0) {
                s.lambda.setZero();
                s.lambda(toward) = 1.0;
                active.assign(1, toward);
                s.point = X.row(toward).transpose();
            } else {
                s.lambda *= 1.0 - step;
                if (s.lambda(toward) == 0.0) active.push_back(toward);
                s.lambda(toward) += step;
                s.point += step * direction;
            }
        } else {
            s.lambda *= 1.0 + step;
            s.lambda(away) -= step;
            if (step >= max_step) {
                s.lambda(away) = 0.0;
                active.erase(std::find(active.begin(), active.end(), away));
            }
            s.point += step * direction;
        }
        s.residual = s.point - x;
    }
    s.exit = Exit::MaxIter;
    return s;
}

// Wolfe's minimum-norm-point method on the translated points y_i = x_i - x.
// Primary in low dimension and a fallback when Frank-Wolfe zig-zags near a face.
// The corral keeps at most d + 1 points.
SolverState solve_min_norm(const PointSet& points, std::span<const double> query,
                           const Tolerance& tol, double scale, StopRule rule) {
    const Matrix& X = points.data();
    const Eigen::Index n = X.rows();
    const ConstVecMap x(query.data(), static_cast<Eigen::Index>(query.size()));
    const double band = tol.band(scale);
    const double gap_tol = tol.resolved_gap_tol(scale);
    const std::size_t max_iter = tol.resolved_max_iter(points.n_points(), points.dim());
    constexpr double kWeightTol = 1e-12;

    SolverState s;
    s.lambda = Eigen::VectorXd::Zero(n);
    Eigen::Index start = 0;
    (X.rowwise() - x.transpose()).rowwise().squaredNorm().minCoeff(&start);
    std::vector<Eigen::Index> corral{start};
    Eigen::VectorXd w = Eigen::VectorXd::Ones(1);

    auto translated = [&](Eigen::Index i) -> Eigen::VectorXd { return X.row(i).transpose() - x; };
    auto combine = [&](const Eigen::VectorXd& coef) {
        Eigen::VectorXd p = Eigen::VectorXd::Zero(x.size());
        for (std::size_t k = 0; k < corral.size(); ++k) p.noalias() += coef(k) * translated(corral[k]);
        return p;
    };
    auto affine_minimizer = [&]() {
        const Eigen::Index k = static_cast<Eigen::Index>(corral.size());
        Eigen::MatrixXd Y(x.size(), k);
        for (Eigen::Index j = 0; j < k; ++j) Y.col(j) = translated(corral[j]);
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
        kkt.topLeftCorner(k, k) = Y.transpose() * Y;
        kkt.topRightCorner(k, 1).setConstant(-1.0);
        kkt.bottomLeftCorner(1, k).setConstant(1.0);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        rhs(k) = 1.0;
        Eigen::VectorXd sol = kkt.colPivHouseholderQr().solve(rhs);
        return Eigen::VectorXd(sol.head(k));
    };

    Eigen::VectorXd grad(n);
    Eigen::VectorXd p = combine(w);
    for (s.iterations = 0; s.iterations < max_iter; ++s.iterations) {
        grad.noalias() = X * p;
        grad.array() -= x.dot(p);
        Eigen::Index toward = 0;
        const double g_min = grad.minCoeff(&toward);
        const double dist2 = p.squaredNorm();
        s.gap = dist2 - g_min;
        const double dist = std::sqrt(dist2);

        if (rule == StopRule::Certificate) {
            if (dist <= band) {
                s.exit = Exit::InsideBand;
                break;
            }
            if (s.gap < dist2 && (dist2 - s.gap) / dist > band) {
                s.exit = Exit::Separated;
                break;
            }
        }
        if (dist2 == 0.0 || (s.gap <= gap_tol && (dist2 <= band * band || s.gap < dist2))) {
            s.exit = Exit::Gap;
            break;
        }
        if (std::find(corral.begin(), corral.end(), toward) != corral.end() ||
            corral.size() > static_cast<std::size_t>(x.size()) + 1) {
            s.exit = Exit::Degenerate;
            break;
        }
        corral.push_back(toward);
        w.conservativeResize(w.size() + 1);
        w(w.size() - 1) = 0.0;

        for (;;) {
            const Eigen::VectorXd v = affine_minimizer();
            if ((v.array() > kWeightTol).all()) {
                w = v;
                break;
            }
            double theta = 1.0;
            for (Eigen::Index k = 0; k < v.size(); ++k) {
                if (v(k) <= kWeightTol && w(k) - v(k) > 0.0) theta = std::min(theta, w(k) / (w(k) - v(k)));
            }
            w = ((1.0 - theta) * w + theta * v).cwiseMax(0.0);
            std::vector<Eigen::Index> kept;
            std::vector<double> kept_w;
            for (Eigen::Index k = 0; k < w.size(); ++k) {
                if (w(k) > kWeightTol) {
                    kept.push_back(corral[static_cast<std::size_t>(k)]);
                    kept_w.push_back(w(k));
                }
            }
            if (kept.empty()) {
                kept.push_back(corral.back());
                kept_w.push_back(1.0);
            }
            corral = std::move(kept);
            w = Eigen::Map<Eigen::VectorXd>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
            w /= w.sum();
        }
        p = combine(w);
    }
    if (s.iterations == max_iter) s.exit = Exit::MaxIter;
    for (std::size_t k = 0; k < corral.size(); ++k) s.lambda(corral[k]) = w(static_cast<Eigen::Index>(k));
    return s;
}

SolverState solve_robust(const PointSet& points, std::span<const double> query,
                         const Tolerance& tol, double scale, StopRule rule) {
    if (points.dim() <= kMinNormMaxDim) return solve_min_norm(points, query, tol, scale, rule);
    SolverState s = solve(points, query, tol, scale, rule);
    if (s.exit != Exit::MaxIter) return s;
    SolverState fallback = solve_min_norm(points, query, tol, scale, rule);
    fallback.iterations += s.iterations;
    return fallback;
}

void finalize(const PointSet& points, std::span<const double> query, SolverState& s) {
    const ConstVecMap x(query.data(), static_cast<Eigen::Index>(query.size()));
    s.lambda = s.lambda.cwiseMax(0.0);
    s.lambda /= s.lambda.sum();
    s.point.noalias() = points.data().transpose() * s.lambda;
    s.residual = s.point - x;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

}  // namespace

std::size_t Tolerance::resolved_max_iter(std::size_t n_points, std::size_t dim) const {
    if (max_iter != 0) return max_iter;
    return std::max<std::size_t>(10'000, 10 * n_points * dim);
}

double Tolerance::resolved_gap_tol(double scale) const {
    if (gap_tol > 0.0) return gap_tol;
    return 1e-12 * scale * scale;
}

void Tolerance::validate() const {
    if (!(tau_abs >= 0.0) || !(tau_rel >= 0.0) || !(gap_tol >= 0.0)) {
        throw InvalidInput("tolerances must be nonnegative");
    }
    if (tau_abs == 0.0 && tau_rel == 0.0) {
        throw InvalidInput("at least one of tau_abs and tau_rel must be positive");
    }
}

const char* to_string(Status status) {
    return status == Status::Interpolation ? "interpolation" : "extrapolation";
}

double membership_scale(const PointSet& X, std::span<const double> x) {
    const ConstVecMap q(x.data(), static_cast<Eigen::Index>(x.size()));
    return std::max({1.0, q.norm(), X.data().rowwise().norm().maxCoeff()});
}

HullDistance hull_distance(const PointSet& X, std::span<const double> x, const Tolerance& tol) {
    check_inputs(X, x);
    tol.validate();
    const double scale = membership_scale(X, x);
    SolverState s = solve_robust(X, x, tol, scale, StopRule::Converge);
    finalize(X, x, s);

    HullDistance out;
    out.distance = s.residual.norm();
    out.coefficients = to_std(s.lambda);
    out.gap = s.gap;
    out.iterations = s.iterations;
    out.converged = s.exit == Exit::Gap || s.exit == Exit::Degenerate;
    return out;
}

MembershipResult test_membership(const PointSet& X, std::span<const double> x,
                                 const Tolerance& tol, StopRule rule) {
    check_inputs(X, x);
    tol.validate();
    const double scale = membership_scale(X, x);
    SolverState s = solve_robust(X, x, tol, scale, rule);
    finalize(X, x, s);

    MembershipResult out;
    out.scale = scale;
    out.band = tol.band(scale);
    out.distance = s.residual.norm();
    out.iterations = s.iterations;
    out.converged = s.exit != Exit::MaxIter;
    if (out.distance <= out.band) {
        out.status = Status::Interpolation;
        out.coefficients = to_std(s.lambda);
    } else {
        out.status = Status::Extrapolation;
        out.witness = to_std(-s.residual / out.distance);
    }
    return out;
}

ConvexPositionCount convex_position_count(const PointSet& X, const Tolerance& tol,
                                          std::size_t workers) {
    if (X.n_points() < 2) throw InvalidInput("convex position needs at least two points");
    X.validate();
    tol.validate();
    const std::size_t n = X.n_points();
    std::vector<char> inside(n, 0);
    std::vector<char> nonconverged(n, 0);
    parallel_for(n, workers, [&](std::size_t i) {
        const PointSet others = X.without_row(i);
        const MembershipResult r = test_membership(others, X.row(i), tol, StopRule::Certificate);
        inside[i] = r.status == Status::Interpolation;
        nonconverged[i] = !r.converged;
    });

    ConvexPositionCount out;
    out.flags.assign(inside.begin(), inside.end());
    out.in_hull_count = static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
    out.nonconverged = static_cast<std::size_t>(std::count(nonconverged.begin(), nonconverged.end(), 1));
    return out;
}

}  // namespace hullscope
