#pragma once

#include <cstdint>
#include <random>

namespace hullscope {

/// Seed of an experiment. Trial i draws from Rng(mix_seed(seed, i)), so every trial's
/// stream is fixed by (seed, i) alone.
struct Seed {
    std::uint64_t value = 0;
};

/// SplitMix64 finalizer applied to seed + (index + 1) * golden gamma.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Stream tags for auxiliary draws derived from a master seed (kept disjoint from trial indices).
inline constexpr std::uint64_t kStructureStream = 0xA5A5'0000'0000'0001ULL;
inline constexpr std::uint64_t kDrawStream = 0xA5A5'0000'0000'0002ULL;
inline constexpr std::uint64_t kQueryStream = 0xA5A5'0000'0000'0003ULL;

/// mt19937_64 with hand-written transforms so variates are identical across standard libraries:
/// uniforms take the top 53 bits, normals use the Box-Muller pair (second value cached).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    double normal();

    /// Uniform integer on [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace hullscope
