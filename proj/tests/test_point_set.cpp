#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hullscope/errors.hpp"
#include "hullscope/parallel.hpp"
#include "hullscope/point_set.hpp"

using namespace hullscope;

TEST(PointSet, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(PointSet(Matrix(0, 3)), InvalidInput);
    EXPECT_THROW(PointSet(Matrix(3, 0)), InvalidInput);
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(PointSet{m}, InvalidInput);
    m(1, 0) = std::numeric_limits<double>::infinity();
    EXPECT_THROW(PointSet{m}, InvalidInput);
}

TEST(PointSet, RowsAndCentroid) {
    Matrix m(3, 2);
    m << 0, 0, 2, 0, 1, 3;
    PointSet X(m);
    EXPECT_EQ(X.n_points(), 3u);
    EXPECT_EQ(X.dim(), 2u);
    EXPECT_EQ(X.row(2)[1], 3.0);
    auto c = X.centroid();
    EXPECT_DOUBLE_EQ(c[0], 1.0);
    EXPECT_DOUBLE_EQ(c[1], 1.0);

    PointSet rest = X.without_row(1);
    ASSERT_EQ(rest.n_points(), 2u);
    EXPECT_EQ(rest.row(1)[1], 3.0);

    std::vector<std::size_t> pick{2, 0};
    PointSet sel = X.select_rows(pick);
    EXPECT_EQ(sel.row(0)[0], 1.0);
    EXPECT_EQ(sel.row(1)[0], 0.0);
}

TEST(Parallel, VisitsEveryIndexOnceForAnyWorkerCount) {
    for (std::size_t workers : {1u, 2u, 4u, 16u}) {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) ASSERT_EQ(h, 1);
    }
}

TEST(Parallel, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 37) throw DomainError("boom");
                              }),
                 DomainError);
}
