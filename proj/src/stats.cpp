#include "hullscope/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hullscope/errors.hpp"

namespace hullscope {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0 || successes > trials) {
        throw InvalidInput("Wilson interval needs 0 <= successes <= trials, trials >= 1");
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
    // Guard the invariant low <= p_hat <= high against rounding at p = 0 or 1.
    out.low = std::min(out.low, p);
    out.high = std::max(out.high, p);
    return out;
}

}  // namespace hullscope
