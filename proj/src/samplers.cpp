#include "hullscope/samplers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "hullscope/errors.hpp"

namespace hullscope {

namespace {

struct KindName {
    const char* name;
    SamplerKind kind;
};

constexpr KindName kKindNames[] = {
    {"gauss", SamplerKind::GaussianIso},
    {"ball", SamplerKind::BallUniform},
    {"affine", SamplerKind::AffineGaussian},
    {"walk", SamplerKind::SimplexWalk},
    {"cube", SamplerKind::HypercubeVertices},
    {"square", SamplerKind::UniformParallelogram},
    {"triangle", SamplerKind::UniformTriangle},
    {"zero", SamplerKind::ConstantZero},
};

SamplerKind parse_kind(const std::string& name) {
    for (const auto& entry : kKindNames) {
        if (name == entry.name) return entry.kind;
    }
    if (name == "gaussian") return SamplerKind::GaussianIso;
    if (name == "simplex-walk") return SamplerKind::SimplexWalk;
    if (name == "uniform" || name == "parallelogram") return SamplerKind::UniformParallelogram;
    throw SpecError("unknown sampler kind '" + name + "'");
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw SpecError("bad integer for '" + key + "': '" + value + "'");
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw SpecError("bad number for '" + key + "': '" + value + "'");
    }
}

}  // namespace

const char* kind_name(SamplerKind kind) {
    for (const auto& entry : kKindNames) {
        if (entry.kind == kind) return entry.name;
    }
    return "?";
}

SamplerSpec SamplerSpec::parse(const std::string& text) {
    SamplerSpec spec;
    const auto colon = text.find(':');
    spec.kind = parse_kind(text.substr(0, colon));
    spec.dim = spec.kind == SamplerKind::UniformTriangle || spec.kind == SamplerKind::UniformParallelogram
                   ? 2
                   : 1;
    bool has_dim = false;
    if (colon != std::string::npos) {
        std::stringstream rest(text.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw SpecError("expected key=value, got '" + item + "'");
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            if (key == "d" || key == "dim") {
                spec.dim = parse_count(key, value);
                has_dim = true;
            } else if (key == "dstar") {
                spec.intrinsic_dim = parse_count(key, value);
            } else if (key == "sigma") {
                spec.sigma = parse_real(key, value);
            } else {
                throw SpecError("unknown sampler parameter '" + key + "'");
            }
        }
    }
    if (!has_dim && spec.kind == SamplerKind::AffineGaussian && spec.intrinsic_dim) {
        spec.dim = *spec.intrinsic_dim;
    }
    spec.validate();
    return spec;
}

std::string SamplerSpec::to_string() const {
    std::ostringstream out;
    out << kind_name(kind) << ":d=" << dim;
    if (intrinsic_dim) out << ",dstar=" << *intrinsic_dim;
    if (sigma) out << ",sigma=" << *sigma;
    return out.str();
}

void SamplerSpec::validate() const {
    if (dim < 1) throw SpecError("sampler dimension must be at least 1");
    if (sigma && !(*sigma > 0.0 && std::isfinite(*sigma))) {
        throw SpecError("sigma must be positive and finite");
    }
    if (sigma && kind != SamplerKind::GaussianIso) {
        throw SpecError("sigma only applies to gauss samplers");
    }
    switch (kind) {
        case SamplerKind::AffineGaussian:
            if (!intrinsic_dim || *intrinsic_dim < 1 || *intrinsic_dim > dim) {
                throw SpecError("affine sampler needs 1 <= dstar <= d");
            }
            break;
        case SamplerKind::UniformTriangle:
            if (dim != 2) throw SpecError("triangle sampler is two-dimensional");
            [[fallthrough]];
        default:
            if (intrinsic_dim) throw SpecError("dstar only applies to affine samplers");
    }
    if (kind == SamplerKind::HypercubeVertices && dim > 62) {
        throw SpecError("hypercube dimension too large");
    }
}

SamplerSpec SamplerSpec::with_dim(std::size_t new_dim) const {
    SamplerSpec out = *this;
    if (kind != SamplerKind::UniformTriangle) out.dim = new_dim;
    out.validate();
    return out;
}

Sampler::Sampler(SamplerSpec spec, std::uint64_t structure_seed) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.kind == SamplerKind::AffineGaussian) {
        const auto d = static_cast<Eigen::Index>(spec_.dim);
        const auto k = static_cast<Eigen::Index>(*spec_.intrinsic_dim);
        Rng rng(mix_seed(structure_seed, kStructureStream));
        Eigen::MatrixXd gaussian(d, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) gaussian(i, j) = rng.normal();
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
        frame_ = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
    }
}

void Sampler::draw_row(Rng& rng, std::span<double> out) const {
    const std::size_t d = spec_.dim;
    switch (spec_.kind) {
        case SamplerKind::GaussianIso: {
            const double s = spec_.sigma.value_or(1.0);
            for (double& v : out) v = s * rng.normal();
            break;
        }
        case SamplerKind::BallUniform: {
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (double& v : out) {
                    v = rng.normal();
                    norm2 += v * v;
                }
            } while (norm2 == 0.0);
            const double radius = std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
            const double factor = radius / std::sqrt(norm2);
            for (double& v : out) v *= factor;
            break;
        }
        case SamplerKind::AffineGaussian: {
            const auto k = frame_.cols();
            Eigen::VectorXd latent(k);
            for (Eigen::Index j = 0; j < k; ++j) latent(j) = rng.normal();
            Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(d)) = frame_ * latent;
            break;
        }
        case SamplerKind::SimplexWalk: {
            const double z = rng.uniform() * static_cast<double>(d);
            const std::size_t i = std::min(static_cast<std::size_t>(z), d - 1);
            const double t = z - static_cast<double>(i);
            std::fill(out.begin(), out.end(), 0.0);
            out[i] += 1.0 - t;
            out[(i + 1) % d] += t;
            break;
        }
        case SamplerKind::HypercubeVertices:
            for (double& v : out) v = (rng.next() >> 63) ? 1.0 : -1.0;
            break;
        case SamplerKind::UniformParallelogram:
            for (double& v : out) v = rng.uniform();
            break;
        case SamplerKind::UniformTriangle: {
            const double su = std::sqrt(rng.uniform());
            const double v = rng.uniform();
            out[0] = su * (1.0 - v);
            out[1] = su * v;
            break;
        }
        case SamplerKind::ConstantZero:
            std::fill(out.begin(), out.end(), 0.0);
            break;
    }
}

PointSet Sampler::draw(std::size_t n, Rng& rng) const {
    PointSet out = PointSet::zeros(n, spec_.dim);
    for (std::size_t i = 0; i < n; ++i) draw_row(rng, out.row(i));
    return out;
}

PointSet sample(const SamplerSpec& spec, std::size_t n, Seed seed) {
    spec.validate();
    if (n < 1) throw SpecError("sample size must be at least 1");
    if (spec.kind == SamplerKind::HypercubeVertices) {
        if (spec.dim > 20 || n != (std::size_t{1} << spec.dim)) {
            throw SpecError("hypercube sampling is exhaustive: n must equal 2^d");
        }
        return enumerate_hypercube(spec.dim);
    }
    const Sampler sampler(spec, seed.value);
    Rng rng(mix_seed(seed.value, kDrawStream));
    return sampler.draw(n, rng);
}

PointSet enumerate_hypercube(std::size_t dim) {
    if (dim < 1 || dim > 20) throw SpecError("hypercube dimension must be in 1..20");
    const std::size_t count = std::size_t{1} << dim;
    PointSet out = PointSet::zeros(count, dim);
    for (std::size_t k = 0; k < count; ++k) {
        auto row = out.row(k);
        for (std::size_t j = 0; j < dim; ++j) row[j] = ((k >> j) & 1U) ? 1.0 : -1.0;
    }
    return out;
}

}  // namespace hullscope
