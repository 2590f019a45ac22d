#include "hullscope/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hullscope/errors.hpp"

namespace hullscope {

namespace {

// Cell a of `cells` equal-as-possible windows over [0, extent): [floor(a e / c), floor((a+1) e / c)).
std::pair<std::size_t, std::size_t> window(std::size_t a, std::size_t cells, std::size_t extent) {
    return {a * extent / cells, (a + 1) * extent / cells};
}

}  // namespace

const char* to_string(SelectionStrategy s) {
    return s == SelectionStrategy::CentralPatch ? "central_patch" : "smooth_subsample";
}

SelectionStrategy parse_strategy(const std::string& name) {
    if (name == "central_patch" || name == "central" || name == "patch") return SelectionStrategy::CentralPatch;
    if (name == "smooth_subsample" || name == "smooth" || name == "subsample") {
        return SelectionStrategy::SmoothSubsample;
    }
    throw InvalidInput("unknown selection strategy '" + name + "'");
}

DimSelection make_selection(SelectionStrategy strategy, std::size_t target_dim, std::size_t height,
                            std::size_t width, std::size_t channels) {
    const std::size_t total = height * width * channels;
    if (total == 0) throw DomainError("image shape must be nonempty");
    if (target_dim < 1 || target_dim > total) {
        throw DomainError("target_dim " + std::to_string(target_dim) + " outside 1.." + std::to_string(total));
    }
    DimSelection sel;
    sel.strategy = strategy;
    sel.target_dim = target_dim;
    sel.height = height;
    sel.width = width;
    sel.channels = channels;
    const double per_channel = static_cast<double>(target_dim) / static_cast<double>(channels);
    sel.side = static_cast<std::size_t>(std::ceil(std::sqrt(per_channel) - 1e-12));
    while (sel.side * sel.side * channels < target_dim) ++sel.side;
    if (sel.side > std::min(height, width)) {
        throw DomainError("no square patch of side " + std::to_string(sel.side) + " fits the image");
    }

    const auto flat = [&](std::size_t r, std::size_t c, std::size_t ch) {
        return static_cast<std::uint32_t>((r * width + c) * channels + ch);
    };
    if (strategy == SelectionStrategy::CentralPatch) {
        const std::size_t top = (height - sel.side) / 2;
        const std::size_t left = (width - sel.side) / 2;
        for (std::size_t r = 0; r < sel.side && sel.sources.size() < target_dim; ++r) {
            for (std::size_t c = 0; c < sel.side && sel.sources.size() < target_dim; ++c) {
                for (std::size_t ch = 0; ch < channels && sel.sources.size() < target_dim; ++ch) {
                    sel.sources.push_back({flat(top + r, left + c, ch)});
                }
            }
        }
    } else {
        for (std::size_t a = 0; a < sel.side && sel.sources.size() < target_dim; ++a) {
            const auto [r0, r1] = window(a, sel.side, height);
            for (std::size_t b = 0; b < sel.side && sel.sources.size() < target_dim; ++b) {
                const auto [c0, c1] = window(b, sel.side, width);
                for (std::size_t ch = 0; ch < channels && sel.sources.size() < target_dim; ++ch) {
                    std::vector<std::uint32_t> cell;
                    for (std::size_t r = r0; r < r1; ++r) {
                        for (std::size_t c = c0; c < c1; ++c) cell.push_back(flat(r, c, ch));
                    }
                    sel.sources.push_back(std::move(cell));
                }
            }
        }
    }
    return sel;
}

void DimSelection::apply(std::span<const std::uint8_t> image, std::span<double> out) const {
    if (image.size() != height * width * channels || out.size() != target_dim) {
        throw DimensionError("selection applied to an image or output of the wrong size");
    }
    for (std::size_t j = 0; j < target_dim; ++j) {
        double sum = 0.0;
        for (std::uint32_t idx : sources[j]) sum += image[idx];
        out[j] = sum / (255.0 * static_cast<double>(sources[j].size()));
    }
}

PointSet select_images(std::span<const std::uint8_t> images, std::span<const std::size_t> rows,
                       const DimSelection& sel) {
    const std::size_t image_size = sel.height * sel.width * sel.channels;
    PointSet out = PointSet::zeros(rows.size(), sel.target_dim);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if ((rows[k] + 1) * image_size > images.size()) throw InvalidInput("image row out of range");
        sel.apply(images.subspan(rows[k] * image_size, image_size), out.row(k));
    }
    return out;
}

std::vector<std::size_t> choose_rows(std::size_t total, std::size_t count, Seed seed) {
    if (count > total) throw DomainError("cannot choose more rows than available");
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (count == total) return all;
    Rng rng(seed.value);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace hullscope
