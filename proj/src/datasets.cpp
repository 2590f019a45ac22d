#include "hullscope/datasets.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "hullscope/errors.hpp"

namespace hullscope {

namespace fs = std::filesystem;

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_images(ImageDataset& ds, std::vector<std::uint8_t>& images,
                   std::vector<std::uint8_t>& labels, const fs::path& file) {
    const std::vector<std::uint8_t> bytes = read_file(file);
    if (bytes.size() % kCifarRecordSize != 0) {
        throw FormatError(file.string() + ": size " + std::to_string(bytes.size()) +
                          " is not a multiple of 3073");
    }
    const std::size_t records = bytes.size() / kCifarRecordSize;
    const std::size_t offset = images.size();
    images.resize(offset + records * ds.image_size());
    for (std::size_t r = 0; r < records; ++r) {
        const std::span<const std::uint8_t> record(bytes.data() + r * kCifarRecordSize, kCifarRecordSize);
        const std::span<std::uint8_t> hwc(images.data() + offset + r * ds.image_size(), ds.image_size());
        labels.push_back(decode_cifar_record(record, hwc));
    }
}

struct EmbeddingPaths {
    fs::path sidecar;
    fs::path payload;
};

EmbeddingPaths embedding_paths(const fs::path& path) {
    fs::path base = path;
    if (path.extension() == ".json" || path.extension() == ".f32le") base.replace_extension();
    return {fs::path(base.string() + ".json"), fs::path(base.string() + ".f32le")};
}

}  // namespace

std::size_t ByteTensor::size() const {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                           [](std::size_t a, std::uint32_t b) { return a * b; });
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ByteTensor parse_idx(std::span<const std::uint8_t> bytes, std::size_t expected_dims) {
    if (bytes.size() < 4) throw FormatError("IDX header truncated");
    const std::uint32_t magic = read_be32(bytes, 0);
    const std::size_t dims = magic & 0xFFU;
    if ((magic & 0xFFFFFF00U) != 0x00000800U || dims == 0) {
        throw FormatError("bad IDX magic 0x" + [&] {
            char buf[9];
            std::snprintf(buf, sizeof buf, "%08x", magic);
            return std::string(buf);
        }());
    }
    if (expected_dims != 0 && dims != expected_dims) {
        throw FormatError("IDX file has " + std::to_string(dims) + " dimensions, expected " +
                          std::to_string(expected_dims));
    }
    const std::size_t header = 4 + 4 * dims;
    if (bytes.size() < header) throw FormatError("IDX header truncated");
    ByteTensor out;
    for (std::size_t i = 0; i < dims; ++i) out.shape.push_back(read_be32(bytes, 4 + 4 * i));
    const std::size_t payload = out.size();
    if (bytes.size() - header < payload) throw FormatError("IDX payload truncated");
    if (bytes.size() - header > payload) throw FormatError("IDX file has trailing bytes");
    out.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(header), bytes.end());
    return out;
}

ByteTensor load_idx(const fs::path& path, std::size_t expected_dims) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    try {
        return parse_idx(bytes, expected_dims);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_idx(const ByteTensor& tensor) {
    if (tensor.shape.empty() || tensor.shape.size() > 255) throw FormatError("IDX rank must be 1..255");
    if (tensor.data.size() != tensor.size()) throw FormatError("tensor payload does not match its shape");
    std::vector<std::uint8_t> out;
    write_be32(out, 0x00000800U | static_cast<std::uint32_t>(tensor.shape.size()));
    for (std::uint32_t s : tensor.shape) write_be32(out, s);
    out.insert(out.end(), tensor.data.begin(), tensor.data.end());
    return out;
}

std::span<const std::uint8_t> ImageDataset::train_image(std::size_t i) const {
    return {train_images.data() + i * image_size(), image_size()};
}

std::span<const std::uint8_t> ImageDataset::test_image(std::size_t i) const {
    return {test_images.data() + i * image_size(), image_size()};
}

void ImageDataset::validate() const {
    if (image_size() == 0) throw FormatError(name + ": empty image shape");
    if (train_images.size() != train_count() * image_size() ||
        test_images.size() != test_count() * image_size()) {
        throw FormatError(name + ": label count does not match image count");
    }
}

void keep_first_train_rows(ImageDataset& ds, std::size_t count) {
    if (count == 0 || count >= ds.train_count()) return;
    ds.train_labels.resize(count);
    ds.train_images.resize(count * ds.image_size());
}

ImageDataset load_mnist(const fs::path& dir) {
    ImageDataset ds;
    ds.name = "mnist";
    const ByteTensor train_x = load_idx(dir / "train-images-idx3-ubyte", 3);
    const ByteTensor train_y = load_idx(dir / "train-labels-idx1-ubyte", 1);
    const ByteTensor test_x = load_idx(dir / "t10k-images-idx3-ubyte", 3);
    const ByteTensor test_y = load_idx(dir / "t10k-labels-idx1-ubyte", 1);
    if (train_x.shape[1] != test_x.shape[1] || train_x.shape[2] != test_x.shape[2]) {
        throw FormatError("MNIST train and test images differ in shape");
    }
    ds.height = train_x.shape[1];
    ds.width = train_x.shape[2];
    ds.channels = 1;
    ds.train_images = train_x.data;
    ds.train_labels = train_y.data;
    ds.test_images = test_x.data;
    ds.test_labels = test_y.data;
    ds.validate();
    return ds;
}

std::uint8_t decode_cifar_record(std::span<const std::uint8_t> record, std::span<std::uint8_t> hwc) {
    constexpr std::size_t plane = 32 * 32;
    if (record.size() != kCifarRecordSize || hwc.size() != 3 * plane) {
        throw FormatError("CIFAR record must be 3073 bytes decoding into 32x32x3");
    }
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t p = 0; p < plane; ++p) hwc[p * 3 + c] = record[1 + c * plane + p];
    }
    return record[0];
}

std::vector<std::uint8_t> encode_cifar_record(std::uint8_t label, std::span<const std::uint8_t> hwc) {
    constexpr std::size_t plane = 32 * 32;
    if (hwc.size() != 3 * plane) throw FormatError("CIFAR image must be 32x32x3");
    std::vector<std::uint8_t> out(kCifarRecordSize);
    out[0] = label;
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t p = 0; p < plane; ++p) out[1 + c * plane + p] = hwc[p * 3 + c];
    }
    return out;
}

ImageDataset load_cifar10(const std::vector<fs::path>& train_files, const std::vector<fs::path>& test_files) {
    ImageDataset ds;
    ds.name = "cifar10";
    ds.height = 32;
    ds.width = 32;
    ds.channels = 3;
    for (const auto& f : train_files) append_images(ds, ds.train_images, ds.train_labels, f);
    for (const auto& f : test_files) append_images(ds, ds.test_images, ds.test_labels, f);
    ds.validate();
    return ds;
}

ImageDataset load_cifar10_dir(const fs::path& dir) {
    std::vector<fs::path> train;
    for (int b = 1; b <= 5; ++b) train.push_back(dir / ("data_batch_" + std::to_string(b) + ".bin"));
    return load_cifar10(train, {dir / "test_batch.bin"});
}

PointSet load_embeddings(const fs::path& path) {
    const EmbeddingPaths paths = embedding_paths(path);
    nlohmann::json header;
    try {
        std::ifstream in(paths.sidecar);
        if (!in) throw FormatError("cannot open " + paths.sidecar.string());
        header = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(paths.sidecar.string() + ": " + e.what());
    }
    if (!header.contains("rows") || !header.contains("cols") || !header["rows"].is_number_unsigned() ||
        !header["cols"].is_number_unsigned()) {
        throw FormatError(paths.sidecar.string() + ": rows/cols missing");
    }
    if (header.value("dtype", std::string("f32le")) != "f32le") {
        throw FormatError(paths.sidecar.string() + ": only dtype f32le is supported");
    }
    const std::size_t rows = header["rows"].get<std::size_t>();
    const std::size_t cols = header["cols"].get<std::size_t>();
    const std::vector<std::uint8_t> bytes = read_file(paths.payload);
    if (bytes.size() != rows * cols * 4) {
        throw FormatError(paths.payload.string() + ": payload has " + std::to_string(bytes.size()) +
                          " bytes, header declares " + std::to_string(rows * cols * 4));
    }
    PointSet out = PointSet::zeros(rows, cols);
    double* dst = out.mutable_data().data();
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const std::uint32_t bits = std::uint32_t{bytes[4 * i]} | (std::uint32_t{bytes[4 * i + 1]} << 8) |
                                   (std::uint32_t{bytes[4 * i + 2]} << 16) |
                                   (std::uint32_t{bytes[4 * i + 3]} << 24);
        dst[i] = std::bit_cast<float>(bits);
    }
    out.validate();
    return out;
}

void write_embeddings(const fs::path& path, const PointSet& points, const std::string& split,
                      const std::string& source) {
    const EmbeddingPaths paths = embedding_paths(path);
    const nlohmann::json header = {{"rows", points.n_points()}, {"cols", points.dim()},
                                   {"dtype", "f32le"},          {"split", split},
                                   {"source", source}};
    std::ofstream(paths.sidecar) << header.dump(2) << '\n';
    std::ofstream out(paths.payload, std::ios::binary);
    const double* src = points.data().data();
    for (std::size_t i = 0; i < points.n_points() * points.dim(); ++i) {
        const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(src[i]));
        const char le[4] = {static_cast<char>(bits), static_cast<char>(bits >> 8),
                            static_cast<char>(bits >> 16), static_cast<char>(bits >> 24)};
        out.write(le, 4);
    }
    if (!out) throw FormatError("failed writing " + paths.payload.string());
}

}  // namespace hullscope
