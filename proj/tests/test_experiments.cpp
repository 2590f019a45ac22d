#include <gtest/gtest.h>

#include "hullscope/experiments.hpp"
#include "hullscope/samplers.hpp"

using namespace hullscope;

namespace {

ImageDataset tiny_dataset(std::size_t train, std::size_t test, std::uint64_t seed) {
    ImageDataset ds;
    ds.name = "tiny";
    ds.height = 8;
    ds.width = 8;
    ds.channels = 1;
    Rng rng(seed);
    auto fill = [&](std::vector<std::uint8_t>& images, std::vector<std::uint8_t>& labels, std::size_t n) {
        images.resize(n * 64);
        labels.assign(n, 0);
        for (auto& b : images) b = static_cast<std::uint8_t>(rng.below(256));
    };
    fill(ds.train_images, ds.train_labels, train);
    fill(ds.test_images, ds.test_labels, test);
    return ds;
}

}  // namespace

TEST(Proportion, SubsetOfTrainIsInside) {
    PointSet train = sample(SamplerSpec::parse("gauss:d=5"), 40, Seed{1});
    std::vector<std::size_t> rows{0, 5, 39};
    ProportionResult r = interpolation_proportion(train, train.select_rows(rows));
    EXPECT_EQ(r.fraction, 1.0);
    EXPECT_EQ(r.inside, 3u);
}

TEST(Proportion, HeldOutCubeVertex) {
    PointSet cube = enumerate_hypercube(8);
    std::vector<std::size_t> held{100};
    ProportionResult r = interpolation_proportion(cube.without_row(100), cube.select_rows(held));
    EXPECT_EQ(r.fraction, 0.0);
    EXPECT_EQ(r.flags, std::vector<bool>{false});
}

TEST(Proportion, WorkerIndependent) {
    PointSet train = sample(SamplerSpec::parse("ball:d=4"), 100, Seed{2});
    PointSet test = sample(SamplerSpec::parse("ball:d=4"), 80, Seed{3});
    ProportionResult a = interpolation_proportion(train, test, {}, 1);
    ProportionResult b = interpolation_proportion(train, test, {}, 16);
    EXPECT_EQ(a.flags, b.flags);
    EXPECT_GT(a.inside, 0u);
    EXPECT_LT(a.inside, 80u);
}

TEST(DatasetSweep, FractionFallsWithDimension) {
    ImageDataset ds = tiny_dataset(400, 60, 4);
    SubsetSpec subset{300, 50, Seed{5}};
    DatasetRow lo = dataset_proportion(ds, SelectionStrategy::CentralPatch, 2, subset, {}, 1);
    DatasetRow hi = dataset_proportion(ds, SelectionStrategy::CentralPatch, 16, subset, {}, 1);
    EXPECT_EQ(lo.train_rows, 300u);
    EXPECT_EQ(lo.test_rows, 50u);
    EXPECT_GT(lo.fraction, 0.5);
    EXPECT_LT(hi.fraction, lo.fraction);
    EXPECT_EQ(dataset_csv_header(), "dataset,strategy,target_dim,train_rows,test_rows,fraction,seed");
    EXPECT_EQ(to_csv_row(lo).rfind("tiny,central_patch,2,300,50,", 0), 0u);
    DatasetRow smooth = dataset_proportion(ds, SelectionStrategy::SmoothSubsample, 2, subset, {}, 1);
    EXPECT_EQ(to_json(smooth)["strategy"], "smooth_subsample");
}

TEST(DatasetSweep, SubsetsAreStableAndBounded) {
    ImageDataset ds = tiny_dataset(50, 20, 6);
    SubsetSpec all{0, 0, Seed{1}};
    EXPECT_EQ(train_subset(ds, all).size(), 50u);
    EXPECT_EQ(test_subset(ds, all).size(), 20u);
    SubsetSpec some{10, 5, Seed{1}};
    EXPECT_EQ(train_subset(ds, some), train_subset(ds, some));
    EXPECT_EQ(test_subset(ds, some).size(), 5u);
}

TEST(ProjectionProportion, Deterministic) {
    ImageDataset ds = tiny_dataset(300, 30, 7);
    auto train_rows = train_subset(ds, {0, 0, Seed{}});
    auto test_rows = test_subset(ds, {0, 0, Seed{}});
    PointSet train = image_rows(ds.train_images, ds.image_size(), train_rows);
    PointSet test = image_rows(ds.test_images, ds.image_size(), test_rows);
    EXPECT_LE(train.data().maxCoeff(), 1.0);
    ProjectionSpec spec{32, 3, Seed{9}};
    const double a = projection_proportion(train, test, spec, {}, 1);
    const double b = projection_proportion(train, test, spec, {}, 4);
    EXPECT_EQ(a, b);
    EXPECT_GT(a, 0.3);
    spec.kept_dims = 12;
    EXPECT_LT(projection_proportion(train, test, spec, {}, 1), a);
}
