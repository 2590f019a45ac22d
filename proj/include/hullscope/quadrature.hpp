#pragma once

#include <cstddef>
#include <vector>

namespace hullscope {

/// Gauss-Hermite rule for integral exp(-t^2) f(t) dt.
struct GaussHermiteRule {
    std::vector<double> nodes;    // descending
    std::vector<double> weights;  // weights that underflow double range are stored as 0
};

/// n-point rule: Golub-Welsch eigenvalues polished by Newton steps on the orthonormal
/// Hermite recurrence, rescaled on the fly so rules of several thousand nodes do not overflow.
GaussHermiteRule compute_gauss_hermite(std::size_t n);

/// Cached version of compute_gauss_hermite; safe to call from many threads.
const GaussHermiteRule& gauss_hermite(std::size_t n);

}  // namespace hullscope
