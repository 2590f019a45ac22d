#pragma once

#include <cstddef>
#include <vector>

#include "hullscope/point_set.hpp"
#include "hullscope/rng.hpp"

namespace hullscope {

struct EigenDecomposition {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // column j pairs with values(j)
    std::size_t sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix (asymmetry above 1e-10 relative ->
/// DomainError). Sweeps until the off-diagonal Frobenius norm is below 1e-12 |M|_F.
EigenDecomposition eigensolve_symmetric(const Eigen::MatrixXd& m);

/// Sample covariance spectrum of a point set.
struct PcaSpectrum {
    std::vector<double> eigenvalues;  // descending, clipped at 0
    bool degenerate = false;          // all-constant data

    double total() const;
    /// Smallest k whose leading k eigenvalues explain at least `threshold` of the variance;
    /// 0 for degenerate data.
    std::size_t components_for(double threshold) const;
};

/// Eigenvalues of the (N-1)-normalised covariance of centred X. Requires N >= 2.
PcaSpectrum pca_explained(const PointSet& X);

/// Double-centred Gram matrix B = -1/2 J D^2 J of the Euclidean distance matrix D.
Eigen::MatrixXd mds_gram(const PointSet& X);

/// Classical MDS to k dimensions: coordinates are the top-k eigenvectors of mds_gram(X)
/// scaled by sqrt(max(eigenvalue, 0)). Requires 1 <= k <= min(N - 1, d). Above 512 rows the
/// same coordinates come from the d x d scatter matrix instead of the N x N Gram matrix.
PointSet classical_mds(const PointSet& X, std::size_t k);

/// Y = X G with G a seeded d x out_dim matrix of i.i.d. N(0, 1) entries (no normalisation).
PointSet random_projection(const PointSet& X, std::size_t out_dim, Seed seed);

/// The d x out_dim matrix used by random_projection.
Matrix gaussian_projection_matrix(std::size_t in_dim, std::size_t out_dim, Seed seed);

/// Seeded uniform k-subset of column indices (without replacement, in draw order).
std::vector<std::size_t> choose_columns(std::size_t dim, std::size_t k, Seed seed);

PointSet select_columns(const PointSet& X, const std::vector<std::size_t>& columns);

/// select_columns(X, choose_columns(d, k, seed)); k > d -> DomainError.
PointSet select_random_dims(const PointSet& X, std::size_t k, Seed seed);

}  // namespace hullscope
