#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hullscope/point_set.hpp"

namespace hullscope {

/// Unsigned-byte tensor read from an IDX file.
struct ByteTensor {
    std::vector<std::uint32_t> shape;
    std::vector<std::uint8_t> data;

    std::size_t size() const;
};

inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;
inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;

/// Parses an unsigned-byte IDX file: big-endian magic 0x000008NN (NN = number of dims),
/// NN big-endian uint32 sizes, then the payload. Throws FormatError on a bad magic, a
/// truncated header or payload, or trailing bytes. `expected_dims` = 0 accepts any rank.
ByteTensor load_idx(const std::filesystem::path& path, std::size_t expected_dims = 0);
ByteTensor parse_idx(std::span<const std::uint8_t> bytes, std::size_t expected_dims = 0);
std::vector<std::uint8_t> encode_idx(const ByteTensor& tensor);

/// Labeled images stored as N x H x W x C bytes.
struct ImageDataset {
    std::string name;
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<std::uint8_t> train_images;
    std::vector<std::uint8_t> train_labels;
    std::vector<std::uint8_t> test_images;
    std::vector<std::uint8_t> test_labels;

    std::size_t image_size() const { return height * width * channels; }
    std::size_t train_count() const { return train_labels.size(); }
    std::size_t test_count() const { return test_labels.size(); }
    std::span<const std::uint8_t> train_image(std::size_t i) const;
    std::span<const std::uint8_t> test_image(std::size_t i) const;

    /// Throws FormatError when label and image counts disagree.
    void validate() const;
};

/// Drops every train row after the first `count` (no-op when count is 0 or covers the split).
void keep_first_train_rows(ImageDataset& ds, std::size_t count);

/// Reads train-images-idx3-ubyte, train-labels-idx1-ubyte, t10k-images-idx3-ubyte and
/// t10k-labels-idx1-ubyte from `dir`.
ImageDataset load_mnist(const std::filesystem::path& dir);

inline constexpr std::size_t kCifarRecordSize = 3073;

/// Decodes one CIFAR-10 record (label byte, then 1024 R, 1024 G, 1024 B bytes) into
/// its label and a 32 x 32 x 3 (H x W x C) image.
std::uint8_t decode_cifar_record(std::span<const std::uint8_t> record, std::span<std::uint8_t> hwc);
std::vector<std::uint8_t> encode_cifar_record(std::uint8_t label, std::span<const std::uint8_t> hwc);

/// Loads CIFAR-10 binary batches; each file must hold a whole number of 3073-byte records.
ImageDataset load_cifar10(const std::vector<std::filesystem::path>& train_files,
                          const std::vector<std::filesystem::path>& test_files);

/// data_batch_1..5.bin and test_batch.bin under `dir`.
ImageDataset load_cifar10_dir(const std::filesystem::path& dir);

/// Embedding matrix stored as `<base>.json` (rows, cols, dtype "f32le", split, source)
/// plus `<base>.f32le` (row-major little-endian float32). `path` may name either file or the base.
PointSet load_embeddings(const std::filesystem::path& path);
void write_embeddings(const std::filesystem::path& path, const PointSet& points,
                      const std::string& split, const std::string& source);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace hullscope
