#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hullscope/datasets.hpp"
#include "hullscope/point_set.hpp"
#include "hullscope/rng.hpp"

namespace hullscope {

enum class SelectionStrategy { CentralPatch, SmoothSubsample };

const char* to_string(SelectionStrategy s);
SelectionStrategy parse_strategy(const std::string& name);

/// Deterministic map from an H x W x C byte image to `target_dim` reals.
///
/// Feature j is the mean of the pixels listed in sources[j] (flat H x W x C indices),
/// scaled to [0, 1]. CentralPatch features have a single source each; SmoothSubsample
/// features are box-pooling windows.
struct DimSelection {
    SelectionStrategy strategy = SelectionStrategy::CentralPatch;
    std::size_t target_dim = 0;
    std::size_t height = 0, width = 0, channels = 0;
    std::size_t side = 0;  // ceil(sqrt(target_dim / C))
    std::vector<std::vector<std::uint32_t>> sources;

    void apply(std::span<const std::uint8_t> image, std::span<double> out) const;
};

/// CentralPatch: the side x side patch at ((H - side)/2, (W - side)/2), pixels row-major with
/// channels innermost, first target_dim of them. SmoothSubsample: box-average each channel
/// onto a side x side grid, cells row-major with channels innermost, first target_dim cells.
/// Throws DomainError unless 1 <= target_dim <= H W C.
DimSelection make_selection(SelectionStrategy strategy, std::size_t target_dim, std::size_t height,
                            std::size_t width, std::size_t channels);

/// Rows `rows` of an image block (count x image_size bytes) mapped through `sel`.
PointSet select_images(std::span<const std::uint8_t> images, std::span<const std::size_t> rows,
                       const DimSelection& sel);

/// `count` distinct indices from [0, total), seeded, returned in ascending order.
std::vector<std::size_t> choose_rows(std::size_t total, std::size_t count, Seed seed);

}  // namespace hullscope
