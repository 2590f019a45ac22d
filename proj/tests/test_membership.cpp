#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hullscope/errors.hpp"
#include "hullscope/membership.hpp"
#include "hullscope/rng.hpp"
#include "hullscope/samplers.hpp"
#include "planar_oracle.hpp"

using namespace hullscope;

namespace {

PointSet from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t n = rows.size();
    const std::size_t d = rows.begin()->size();
    Matrix m(n, d);
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return PointSet(m);
}

// Checks the result's own certificate: convex weights reproduce x inside the band, or the
// witness strictly separates x from every row.
void expect_certificate(const PointSet& X, std::span<const double> x, const MembershipResult& r) {
    const Eigen::Map<const Eigen::VectorXd> q(x.data(), static_cast<Eigen::Index>(x.size()));
    if (r.status == Status::Interpolation) {
        ASSERT_TRUE(r.coefficients.has_value());
        ASSERT_FALSE(r.witness.has_value());
        const auto& lam = *r.coefficients;
        ASSERT_EQ(lam.size(), X.n_points());
        double sum = 0.0;
        for (double l : lam) {
            EXPECT_GE(l, 0.0);
            sum += l;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
        const Eigen::Map<const Eigen::VectorXd> l(lam.data(), static_cast<Eigen::Index>(lam.size()));
        EXPECT_LE((X.data().transpose() * l - q).norm(), r.band);
    } else {
        ASSERT_TRUE(r.witness.has_value());
        ASSERT_FALSE(r.coefficients.has_value());
        const Eigen::Map<const Eigen::VectorXd> w(r.witness->data(), static_cast<Eigen::Index>(x.size()));
        EXPECT_NEAR(w.norm(), 1.0, 1e-12);
        if (r.distance > 2 * r.band) EXPECT_GT(w.dot(q), (X.data() * w).maxCoeff());
    }
}

}  // namespace

TEST(HullDistance, MidpointOfSegment) {
    PointSet X = from_rows({{0.0}, {1.0}});
    std::vector<double> x{0.5};
    HullDistance h = hull_distance(X, x);
    EXPECT_NEAR(h.distance, 0.0, 1e-12);
    EXPECT_NEAR(h.coefficients[0], 0.5, 1e-12);
    EXPECT_NEAR(h.coefficients[1], 0.5, 1e-12);
    EXPECT_TRUE(h.converged);
}

TEST(HullDistance, DataPointIsInItsOwnHull) {
    PointSet X = sample(SamplerSpec::parse("gauss:d=6"), 30, Seed{3});
    HullDistance h = hull_distance(X, X.row(0));
    EXPECT_EQ(h.distance, 0.0);
    EXPECT_EQ(h.coefficients[0], 1.0);
}

TEST(HullDistance, MatchesPlanarOracleOnUnitSquareSamples) {
    PointSet X = sample(SamplerSpec::parse("square"), 20, Seed{11});
    PointSet Q = sample(SamplerSpec::parse("gauss:d=2,sigma=0.6"), 50, Seed{12});
    std::vector<oracle::P2> pts;
    for (std::size_t i = 0; i < X.n_points(); ++i) pts.push_back({X.row(i)[0], X.row(i)[1]});
    const auto hull = oracle::monotone_chain(pts);
    for (std::size_t j = 0; j < Q.n_points(); ++j) {
        // Shift queries toward the square's center so both sides of the boundary are covered.
        std::vector<double> q{0.5 + Q.row(j)[0], 0.5 + Q.row(j)[1]};
        const double expected = oracle::distance_to_hull(hull, {q[0], q[1]});
        EXPECT_NEAR(hull_distance(X, q).distance, expected, 1e-6) << "query " << j;
    }
}

TEST(Membership, OutsideSegment) {
    PointSet X = from_rows({{0.0}, {1.0}});
    std::vector<double> x{2.0};
    MembershipResult r = test_membership(X, x);
    EXPECT_EQ(r.status, Status::Extrapolation);
    EXPECT_NEAR(r.distance, 1.0, 1e-12);
    ASSERT_TRUE(r.witness);
    EXPECT_DOUBLE_EQ((*r.witness)[0], 1.0);
    expect_certificate(X, x, r);
}

TEST(Membership, CentroidIsInside) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PointSet X = sample(SamplerSpec::parse("gauss:d=7"), 2 + seed, Seed{seed});
        auto c = X.centroid();
        MembershipResult r = test_membership(X, c);
        EXPECT_EQ(r.status, Status::Interpolation);
        expect_certificate(X, c, r);
    }
}

TEST(Membership, HeldOutHypercubeVertexIsOutside) {
    PointSet cube = enumerate_hypercube(8);
    for (std::size_t v : {0u, 77u, 255u}) {
        PointSet rest = cube.without_row(v);
        MembershipResult r = test_membership(rest, cube.row(v));
        EXPECT_EQ(r.status, Status::Extrapolation);
        expect_certificate(rest, cube.row(v), r);
    }
}

TEST(Membership, RejectsBadInput) {
    PointSet X = from_rows({{0.0, 0.0}, {1.0, 1.0}});
    std::vector<double> wrong{1.0};
    EXPECT_THROW(test_membership(X, wrong), DimensionError);
    std::vector<double> nan{0.0, std::nan("")};
    EXPECT_THROW(test_membership(X, nan), InvalidInput);
    Tolerance bad;
    bad.tau_abs = -1.0;
    std::vector<double> ok{0.0, 0.0};
    EXPECT_THROW(test_membership(X, ok, bad), InvalidInput);
}

TEST(Membership, PlanarOracleAgreementAwayFromBoundary) {
    // 10^3 instances here; the acceptance suite runs the full 10^4.
    std::size_t checked = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(mix_seed(99, t));
        const std::size_t n = 3 + rng.below(20);
        Matrix m(n, 2);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
        PointSet X(m);
        std::vector<double> q{1.5 * rng.normal(), 1.5 * rng.normal()};
        std::vector<oracle::P2> pts;
        for (std::size_t i = 0; i < n; ++i) pts.push_back({X.row(i)[0], X.row(i)[1]});
        const auto hull = oracle::monotone_chain(pts);
        for (StopRule rule : {StopRule::Converge, StopRule::Certificate}) {
            MembershipResult r = test_membership(X, q, {}, rule);
            if (oracle::distance_to_boundary(hull, {q[0], q[1]}) <= 10 * r.band) continue;
            const bool inside = oracle::strictly_inside(hull, {q[0], q[1]});
            ASSERT_EQ(r.status == Status::Interpolation, inside) << "instance " << t;
            expect_certificate(X, q, r);
            ++checked;
        }
    }
    EXPECT_GT(checked, 1900u);
}

TEST(Membership, AffineInvariance) {
    Rng rng(5);
    Eigen::Matrix3d A;
    for (int i = 0; i < 9; ++i) A.data()[i] = rng.normal();
    A += 3.0 * Eigen::Matrix3d::Identity();
    const Eigen::RowVector3d b(0.3, -1.0, 2.0);
    for (std::uint64_t t = 0; t < 200; ++t) {
        PointSet X = sample(SamplerSpec::parse("gauss:d=3"), 12, Seed{t});
        PointSet Q = sample(SamplerSpec::parse("gauss:d=3"), 1, Seed{1000 + t});
        Matrix Y = (X.data() * A.transpose()).rowwise() + b;
        Matrix qy = (Q.data() * A.transpose()).rowwise() + b;
        PointSet XY(Y), QY(qy);
        MembershipResult r1 = test_membership(X, Q.row(0));
        MembershipResult r2 = test_membership(XY, QY.row(0));
        if (r1.distance > 100 * r1.band && r2.distance > 100 * r2.band) {
            EXPECT_EQ(r1.status, r2.status);
        } else if (r1.status == Status::Interpolation && r1.distance == 0.0) {
            EXPECT_LE(r2.distance, 1e-6);
        }
    }
}

TEST(Membership, AddingPointsNeverRemovesInterpolation) {
    for (std::uint64_t t = 0; t < 100; ++t) {
        PointSet big = sample(SamplerSpec::parse("gauss:d=4"), 40, Seed{t});
        PointSet Q = sample(SamplerSpec::parse("gauss:d=4"), 1, Seed{500 + t});
        bool was_inside = false;
        for (std::size_t n = 5; n <= 40; n += 5) {
            std::vector<std::size_t> rows(n);
            std::iota(rows.begin(), rows.end(), 0);
            PointSet X = big.select_rows(rows);
            const bool inside = test_membership(X, Q.row(0)).status == Status::Interpolation;
            if (was_inside) EXPECT_TRUE(inside) << "trial " << t << " n " << n;
            was_inside = was_inside || inside;
        }
    }
}

TEST(ConvexPosition, HypercubeVerticesAreExtreme) {
    for (std::size_t d = 3; d <= 8; ++d) {
        ConvexPositionCount c = convex_position_count(enumerate_hypercube(d));
        EXPECT_EQ(c.in_hull_count, 0u) << "d=" << d;
        EXPECT_TRUE(c.in_convex_position());
    }
}

TEST(ConvexPosition, MidpointOfSegment) {
    PointSet X = from_rows({{0.0}, {1.0}, {0.5}});
    ConvexPositionCount c = convex_position_count(X);
    EXPECT_EQ(c.in_hull_count, 1u);
    EXPECT_EQ(c.flags, (std::vector<bool>{false, false, true}));
}

TEST(ConvexPosition, WorkerCountDoesNotMatter) {
    PointSet X = sample(SamplerSpec::parse("ball:d=3"), 60, Seed{8});
    ConvexPositionCount a = convex_position_count(X, {}, 1);
    ConvexPositionCount b = convex_position_count(X, {}, 4);
    EXPECT_EQ(a.flags, b.flags);
    EXPECT_GT(a.in_hull_count, 0u);
}

TEST(Tolerance, Defaults) {
    Tolerance t;
    EXPECT_EQ(t.resolved_max_iter(10, 3), 10'000u);
    EXPECT_EQ(t.resolved_max_iter(1000, 30), 300'000u);
    EXPECT_DOUBLE_EQ(t.resolved_gap_tol(10.0), 1e-10);
    EXPECT_DOUBLE_EQ(t.band(1.0), 1e-9 + 1e-7);
}
