#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hullscope {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// A dataset X: one sample per row, N x d, every entry finite.
class PointSet {
public:
    PointSet() = default;

    /// Takes ownership of `data`; throws InvalidInput if empty or non-finite.
    explicit PointSet(Matrix data);

    /// Zero-filled N x d set (filled in place by samplers and loaders).
    static PointSet zeros(std::size_t n_points, std::size_t dim);

    std::size_t n_points() const { return static_cast<std::size_t>(data_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(data_.cols()); }

    const Matrix& data() const { return data_; }
    Matrix& mutable_data() { return data_; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * dim(), dim()};
    }
    std::span<double> row(std::size_t i) { return {data_.data() + i * dim(), dim()}; }

    std::vector<double> row_vector(std::size_t i) const;

    /// Copy with row `i` removed (N must be >= 2).
    PointSet without_row(std::size_t i) const;

    /// Rows selected by index, in the given order.
    PointSet select_rows(std::span<const std::size_t> rows) const;

    /// Row mean.
    std::vector<double> centroid() const;

    /// Throws InvalidInput when any entry is NaN or Inf.
    void validate() const;

private:
    Matrix data_;
};

}  // namespace hullscope
