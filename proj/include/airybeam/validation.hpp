// SPDX-License-Identifier: Apache-2.0
// Self-checks behind `airysim validate`: propagator properties, oracle agreement, precoder contract.
#pragma once

#include "airybeam/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace airybeam
{
    struct CheckResult
    {
        std::string name;
        double value = 0.0;
        double threshold = 0.0;
        bool passed = false;
        bool gating = true; // informational checks never fail the run
        std::string detail;
    };

    struct ValidationOptions
    {
        std::size_t cases = 20;
        std::uint64_t seed = 20240607;
        bool include_direct_oracle = true;
    };

    // Random smooth field: Gaussian envelope (width `envelope`) times a random superposition of plane
    // waves with |f| <= max_frequency
    std::vector<cplx> random_band_limited(const GridSpec &grid, double max_frequency, double envelope,
                                          std::uint64_t seed);

    std::vector<CheckResult> run_validation(const ScenarioConfig &scenario, const ValidationOptions &options);
}
