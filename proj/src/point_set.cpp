#include "hullscope/point_set.hpp"

#include <cmath>
#include <string>

#include "hullscope/errors.hpp"

namespace hullscope {

PointSet::PointSet(Matrix data) : data_(std::move(data)) {
    validate();
}

PointSet PointSet::zeros(std::size_t n_points, std::size_t dim) {
    if (n_points == 0 || dim == 0) {
        throw InvalidInput("point set must have at least one row and one column");
    }
    PointSet out;
    out.data_ = Matrix::Zero(static_cast<Eigen::Index>(n_points), static_cast<Eigen::Index>(dim));
    return out;
}

std::vector<double> PointSet::row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
}

PointSet PointSet::without_row(std::size_t i) const {
    if (n_points() < 2) {
        throw InvalidInput("cannot remove a row from a single-row point set");
    }
    PointSet out = zeros(n_points() - 1, dim());
    std::size_t k = 0;
    for (std::size_t r = 0; r < n_points(); ++r) {
        if (r == i) continue;
        out.data_.row(static_cast<Eigen::Index>(k++)) = data_.row(static_cast<Eigen::Index>(r));
    }
    return out;
}

PointSet PointSet::select_rows(std::span<const std::size_t> rows) const {
    PointSet out = zeros(rows.size(), dim());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] >= n_points()) {
            throw InvalidInput("row index " + std::to_string(rows[k]) + " out of range");
        }
        out.data_.row(static_cast<Eigen::Index>(k)) = data_.row(static_cast<Eigen::Index>(rows[k]));
    }
    return out;
}

std::vector<double> PointSet::centroid() const {
    Vector mean = data_.colwise().mean().transpose();
    return {mean.data(), mean.data() + mean.size()};
}

void PointSet::validate() const {
    if (data_.rows() < 1 || data_.cols() < 1) {
        throw InvalidInput("point set must have at least one row and one column");
    }
    if (!data_.allFinite()) {
        throw InvalidInput("point set contains non-finite entries");
    }
}

}  // namespace hullscope
