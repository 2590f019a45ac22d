#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hullscope/datasets.hpp"
#include "hullscope/membership.hpp"
#include "hullscope/rng.hpp"
#include "hullscope/selection.hpp"

namespace hullscope {

struct ProportionResult {
    double fraction = 0.0;
    std::size_t inside = 0;
    std::vector<bool> flags;  // flags[j]: test row j is in the hull of the train set
    std::size_t nonconverged = 0;
};

/// Fraction of test rows in interpolation regime with respect to the whole train set.
/// Rows are tested in parallel; the result does not depend on `workers`.
ProportionResult interpolation_proportion(const PointSet& train, const PointSet& test,
                                          const Tolerance& tol = {}, std::size_t workers = 0);

/// One point of the pixel-space dimension sweep.
struct DatasetRow {
    std::string dataset;
    SelectionStrategy strategy = SelectionStrategy::CentralPatch;
    std::size_t target_dim = 0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    double fraction = 0.0;
    std::size_t nonconverged = 0;
    Seed seed{};
};

struct SubsetSpec {
    std::size_t train_rows = 0;  // 0 = all
    std::size_t test_rows = 0;   // 0 = all
    Seed seed{};
};

/// Seeded train/test row subsets (ascending indices). The same rows are used for every
/// target dimension and strategy.
std::vector<std::size_t> train_subset(const ImageDataset& ds, const SubsetSpec& subset);
std::vector<std::size_t> test_subset(const ImageDataset& ds, const SubsetSpec& subset);

DatasetRow dataset_proportion(const ImageDataset& ds, SelectionStrategy strategy, std::size_t target_dim,
                              const SubsetSpec& subset, const Tolerance& tol = {},
                              std::size_t workers = 0);

/// `dataset,strategy,target_dim,train_rows,test_rows,fraction,seed`
const std::string& dataset_csv_header();
std::string to_csv_row(const DatasetRow& row);
nlohmann::json to_json(const DatasetRow& row);

/// Embedding-space check: all pixels scaled to [0, 1], projected by one seeded Gaussian
/// matrix to `embed_dim`, then a seeded subset of `kept_dims` columns.
struct ProjectionSpec {
    std::size_t embed_dim = 512;
    std::size_t kept_dims = 10;
    Seed seed{};
};

double projection_proportion(const PointSet& train_pixels, const PointSet& test_pixels,
                             const ProjectionSpec& spec, const Tolerance& tol = {},
                             std::size_t workers = 0);

/// Pixels of the given rows scaled to [0, 1] (all H W C features).
PointSet image_rows(std::span<const std::uint8_t> images, std::size_t image_size,
                    std::span<const std::size_t> rows);

}  // namespace hullscope
