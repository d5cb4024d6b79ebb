#pragma once

#include "airybeam/geometry.hpp"
#include "airybeam/scenario.hpp"

#include <cmath>

namespace testing
{
    inline airybeam::Carrier carrier28() { return airybeam::Carrier(28e9); }
    inline double lambda28() { return airybeam::kSpeedOfLight / 28e9; }

    inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

    // Phase difference wrapped to (-pi, pi]
    inline double wrap(double phase)
    {
        return std::remainder(phase, 2.0 * airybeam::kPi);
    }
}
