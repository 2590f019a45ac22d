#pragma once

#include <cstddef>

namespace hullscope {

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
    double low = 0.0;
    double high = 1.0;

    bool contains(double v) const { return low <= v && v <= high; }
    bool overlaps(const Interval& o) const { return low <= o.high && o.low <= high; }
};

/// Wilson score interval for a binomial proportion (trials >= 1).
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

}  // namespace hullscope
