#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "hullscope/point_set.hpp"
#include "hullscope/rng.hpp"

namespace hullscope {

enum class SamplerKind {
    GaussianIso,           // N(0, sigma^2 I_d)
    BallUniform,           // uniform in the unit d-ball
    AffineGaussian,        // N(0, I_dstar) pushed through a seeded d x dstar orthonormal frame
    SimplexWalk,           // piecewise-linear walk along the edges e_0 -> e_1 -> ... -> e_0
    HypercubeVertices,     // vertices of {-1, +1}^d
    UniformParallelogram,  // uniform in [0, 1]^d (the unit square for d = 2)
    UniformTriangle,       // uniform in the triangle (0,0), (1,0), (0,1)
    ConstantZero,          // the origin
};

/// Declarative description of a synthetic distribution.
///
/// Text form: `<kind>[:key=value,...]` with kinds gauss, ball, affine, walk, cube, square
/// (alias uniform), triangle, zero and keys d, dstar, sigma. Examples: `ball:d=12`,
/// `affine:d=32,dstar=4`, `gauss:d=8,sigma=1`, `triangle`.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::GaussianIso;
    std::size_t dim = 1;
    std::optional<std::size_t> intrinsic_dim;
    std::optional<double> sigma;

    static SamplerSpec parse(const std::string& text);
    std::string to_string() const;

    /// Throws SpecError on invalid combinations.
    void validate() const;

    /// Same distribution in another ambient dimension (UniformTriangle is fixed to d = 2).
    SamplerSpec with_dim(std::size_t new_dim) const;

    bool operator==(const SamplerSpec&) const = default;
};

const char* kind_name(SamplerKind kind);

/// A validated spec together with any per-seed structure (the affine frame).
///
/// The frame depends only on the structure seed, so data and queries drawn from samplers
/// built with the same seed live in the same affine subspace.
class Sampler {
public:
    Sampler(SamplerSpec spec, std::uint64_t structure_seed);

    const SamplerSpec& spec() const { return spec_; }

    void draw_row(Rng& rng, std::span<double> out) const;
    PointSet draw(std::size_t n, Rng& rng) const;

    /// d x dstar matrix with orthonormal columns (AffineGaussian only, empty otherwise).
    const Eigen::MatrixXd& frame() const { return frame_; }

private:
    SamplerSpec spec_;
    Eigen::MatrixXd frame_;
};

/// n rows from `spec`; bit-identical for equal (spec, n, seed).
/// HypercubeVertices requires n == 2^dim and returns enumerate_hypercube(dim).
PointSet sample(const SamplerSpec& spec, std::size_t n, Seed seed);

/// All 2^dim vertices; row k has +1 in column j iff bit j of k is set. Requires 1 <= dim <= 20.
PointSet enumerate_hypercube(std::size_t dim);

}  // namespace hullscope
