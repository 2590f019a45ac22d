#include "hullscope/experiments.hpp"

#include <cstdio>
#include <numeric>

#include "hullscope/errors.hpp"
#include "hullscope/linalg.hpp"
#include "hullscope/parallel.hpp"

namespace hullscope {

namespace {

constexpr std::uint64_t kTrainRowsStream = 1;
constexpr std::uint64_t kTestRowsStream = 2;
constexpr std::uint64_t kProjectionStream = 3;
constexpr std::uint64_t kColumnsStream = 4;

std::vector<std::size_t> subset_rows(std::size_t total, std::size_t wanted, Seed seed, std::uint64_t stream) {
    if (wanted == 0 || wanted >= total) {
        std::vector<std::size_t> all(total);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
    }
    return choose_rows(total, wanted, Seed{mix_seed(seed.value, stream)});
}

}  // namespace

ProportionResult interpolation_proportion(const PointSet& train, const PointSet& test,
                                          const Tolerance& tol, std::size_t workers) {
    if (train.dim() != test.dim()) {
        throw DimensionError("train has dimension " + std::to_string(train.dim()) + ", test has " +
                             std::to_string(test.dim()));
    }
    std::vector<char> inside(test.n_points(), 0);
    std::vector<char> stalled(test.n_points(), 0);
    parallel_for(test.n_points(), workers, [&](std::size_t j) {
        const MembershipResult m = test_membership(train, test.row(j), tol, StopRule::Certificate);
        inside[j] = m.status == Status::Interpolation;
        stalled[j] = !m.converged;
    });
    ProportionResult out;
    out.flags.assign(inside.begin(), inside.end());
    out.inside = static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
    out.nonconverged = static_cast<std::size_t>(std::count(stalled.begin(), stalled.end(), 1));
    out.fraction = static_cast<double>(out.inside) / static_cast<double>(test.n_points());
    return out;
}

std::vector<std::size_t> train_subset(const ImageDataset& ds, const SubsetSpec& subset) {
    return subset_rows(ds.train_count(), subset.train_rows, subset.seed, kTrainRowsStream);
}

std::vector<std::size_t> test_subset(const ImageDataset& ds, const SubsetSpec& subset) {
    return subset_rows(ds.test_count(), subset.test_rows, subset.seed, kTestRowsStream);
}

DatasetRow dataset_proportion(const ImageDataset& ds, SelectionStrategy strategy, std::size_t target_dim,
                              const SubsetSpec& subset, const Tolerance& tol, std::size_t workers) {
    ds.validate();
    const DimSelection sel = make_selection(strategy, target_dim, ds.height, ds.width, ds.channels);
    const auto train_rows = train_subset(ds, subset);
    const auto test_rows = test_subset(ds, subset);
    const PointSet train = select_images(ds.train_images, train_rows, sel);
    const PointSet test = select_images(ds.test_images, test_rows, sel);
    const ProportionResult p = interpolation_proportion(train, test, tol, workers);

    DatasetRow row;
    row.dataset = ds.name;
    row.strategy = strategy;
    row.target_dim = target_dim;
    row.train_rows = train_rows.size();
    row.test_rows = test_rows.size();
    row.fraction = p.fraction;
    row.nonconverged = p.nonconverged;
    row.seed = subset.seed;
    return row;
}

const std::string& dataset_csv_header() {
    static const std::string header = "dataset,strategy,target_dim,train_rows,test_rows,fraction,seed";
    return header;
}

std::string to_csv_row(const DatasetRow& row) {
    char fraction[32];
    std::snprintf(fraction, sizeof fraction, "%.17g", row.fraction);
    return row.dataset + ',' + to_string(row.strategy) + ',' + std::to_string(row.target_dim) + ',' +
           std::to_string(row.train_rows) + ',' + std::to_string(row.test_rows) + ',' + fraction + ',' +
           std::to_string(row.seed.value);
}

nlohmann::json to_json(const DatasetRow& row) {
    return {{"dataset", row.dataset},       {"strategy", to_string(row.strategy)},
            {"target_dim", row.target_dim}, {"train_rows", row.train_rows},
            {"test_rows", row.test_rows},   {"fraction", row.fraction},
            {"nonconverged", row.nonconverged}, {"seed", row.seed.value}};
}

PointSet image_rows(std::span<const std::uint8_t> images, std::size_t image_size,
                    std::span<const std::size_t> rows) {
    PointSet out = PointSet::zeros(rows.size(), image_size);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if ((rows[k] + 1) * image_size > images.size()) throw InvalidInput("image row out of range");
        auto dst = out.row(k);
        for (std::size_t j = 0; j < image_size; ++j) dst[j] = images[rows[k] * image_size + j] / 255.0;
    }
    return out;
}

double projection_proportion(const PointSet& train_pixels, const PointSet& test_pixels,
                             const ProjectionSpec& spec, const Tolerance& tol, std::size_t workers) {
    if (train_pixels.dim() != test_pixels.dim()) throw DimensionError("train/test pixel dimensions differ");
    const Matrix g = gaussian_projection_matrix(train_pixels.dim(), spec.embed_dim,
                                                Seed{mix_seed(spec.seed.value, kProjectionStream)});
    const auto columns = choose_columns(spec.embed_dim, spec.kept_dims, Seed{mix_seed(spec.seed.value, kColumnsStream)});
    const PointSet train = select_columns(PointSet(Matrix(train_pixels.data() * g)), columns);
    const PointSet test = select_columns(PointSet(Matrix(test_pixels.data() * g)), columns);
    return interpolation_proportion(train, test, tol, workers).fraction;
}

}  // namespace hullscope
