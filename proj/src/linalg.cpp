#include "hullscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hullscope/errors.hpp"

namespace hullscope {

namespace {

constexpr std::size_t kMdsDirectLimit = 512;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

}  // namespace

EigenDecomposition eigensolve_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw DomainError("eigensolve_symmetric needs a square matrix");
    if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
    const Eigen::Index n = m.rows();
    const double norm = m.norm();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(norm, 1e-300)) {
        throw DomainError("matrix is not symmetric");
    }

    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    EigenDecomposition out;
    const double target = 1e-12 * norm;
    constexpr std::size_t kMaxSweeps = 100;
    while (out.sweeps < kMaxSweeps && off_diagonal_norm(a) > target) {
        ++out.sweeps;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle from the classic stable formula (Rutishauser).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

double PcaSpectrum::total() const {
    return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

std::size_t PcaSpectrum::components_for(double threshold) const {
    if (degenerate || eigenvalues.empty()) return 0;
    const double sum = total();
    double running = 0.0;
    for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
        running += eigenvalues[k];
        if (running >= threshold * sum) return k + 1;
    }
    return eigenvalues.size();
}

PcaSpectrum pca_explained(const PointSet& X) {
    if (X.n_points() < 2) throw InvalidInput("PCA needs at least two rows");
    const Eigen::RowVectorXd mean = X.data().colwise().mean();
    const Matrix centred = X.data().rowwise() - mean;
    const Eigen::MatrixXd cov =
        (centred.transpose() * centred) / static_cast<double>(X.n_points() - 1);
    const EigenDecomposition eig = eigensolve_symmetric(cov);

    PcaSpectrum out;
    out.eigenvalues.resize(static_cast<std::size_t>(eig.values.size()));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        out.eigenvalues[static_cast<std::size_t>(k)] = std::max(0.0, eig.values(k));
    }
    const double magnitude = std::max(1.0, mean.squaredNorm());
    out.degenerate = out.total() <= 1e-24 * magnitude;
    return out;
}

Eigen::MatrixXd mds_gram(const PointSet& X) {
    const Matrix& x = X.data();
    const Eigen::VectorXd sq = x.rowwise().squaredNorm();
    Eigen::MatrixXd d2 = (-2.0 * (x * x.transpose())).colwise() + sq;
    d2.rowwise() += sq.transpose();
    d2 = d2.cwiseMax(0.0);
    d2.diagonal().setZero();
    // J D2 J subtracts row and column means and adds back the grand mean.
    const Eigen::VectorXd row_mean = d2.rowwise().mean();
    const double grand = row_mean.mean();
    Eigen::MatrixXd b = d2;
    b.colwise() -= row_mean;
    b.rowwise() -= row_mean.transpose();
    b.array() += grand;
    b *= -0.5;
    return 0.5 * (b + b.transpose());
}

PointSet classical_mds(const PointSet& X, std::size_t k) {
    if (k < 1 || k > std::min(X.n_points() - 1, X.dim())) {
        throw DomainError("MDS target dimension must satisfy 1 <= k <= min(N - 1, d)");
    }
    PointSet out = PointSet::zeros(X.n_points(), k);
    if (X.n_points() <= kMdsDirectLimit) {
        const EigenDecomposition eig = eigensolve_symmetric(mds_gram(X));
        for (std::size_t j = 0; j < k; ++j) {
            const auto col = static_cast<Eigen::Index>(j);
            const double scale = std::sqrt(std::max(0.0, eig.values(col)));
            out.mutable_data().col(col) = eig.vectors.col(col) * scale;
        }
        return out;
    }
    // For coordinate input B = Xc Xc^T, so its top eigenpairs follow from the d x d matrix
    // Xc^T Xc: coordinates Xc v_j equal u_j sqrt(lambda_j).
    const Matrix centred = X.data().rowwise() - X.data().colwise().mean();
    const EigenDecomposition eig = eigensolve_symmetric(centred.transpose() * centred);
    for (std::size_t j = 0; j < k; ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        out.mutable_data().col(col) =
            eig.values(col) > 0.0 ? Eigen::VectorXd(centred * eig.vectors.col(col))
                                  : Eigen::VectorXd::Zero(centred.rows());
    }
    return out;
}

Matrix gaussian_projection_matrix(std::size_t in_dim, std::size_t out_dim, Seed seed) {
    if (out_dim < 1) throw DomainError("projection output dimension must be at least 1");
    Rng rng(mix_seed(seed.value, kDrawStream));
    Matrix g(static_cast<Eigen::Index>(in_dim), static_cast<Eigen::Index>(out_dim));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.normal();
    }
    return g;
}

PointSet random_projection(const PointSet& X, std::size_t out_dim, Seed seed) {
    const Matrix g = gaussian_projection_matrix(X.dim(), out_dim, seed);
    return PointSet(Matrix(X.data() * g));
}

std::vector<std::size_t> choose_columns(std::size_t dim, std::size_t k, Seed seed) {
    if (k > dim) throw DomainError("cannot select " + std::to_string(k) + " of " + std::to_string(dim) + " columns");
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Rng rng(mix_seed(seed.value, kDrawStream));
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(dim - i));
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
}

PointSet select_columns(const PointSet& X, const std::vector<std::size_t>& columns) {
    PointSet out = PointSet::zeros(X.n_points(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] >= X.dim()) throw DimensionError("column index out of range");
        out.mutable_data().col(static_cast<Eigen::Index>(j)) = X.data().col(static_cast<Eigen::Index>(columns[j]));
    }
    return out;
}

PointSet select_random_dims(const PointSet& X, std::size_t k, Seed seed) {
    return select_columns(X, choose_columns(X.dim(), k, seed));
}

}  // namespace hullscope
