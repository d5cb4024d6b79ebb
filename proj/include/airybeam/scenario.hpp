// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "airybeam/geometry.hpp"
#include "airybeam/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace airybeam
{
    struct ScenarioConfig
    {
        Carrier carrier{28e9};
        ArrayGeometry array{64, 0.49 * kSpeedOfLight / 28e9};
        std::vector<UserPosition> users;
        std::optional<KnifeEdgeObstacle> obstacle;
        double noise_power = 1e-3; // sigma^2 = N0 [W]
        double tx_power = 1.0;     // P_tx [W]
        double rzf_epsilon = 1e-10;
        GridSpec grid{4096, 256.0 * kSpeedOfLight / 28e9, 25.6 * kSpeedOfLight / 28e9};

        std::size_t num_users() const noexcept { return users.size(); }

        // Throws ConfigError on any violated invariant
        void validate() const;

        // Non-fatal findings, e.g. users beyond the Fraunhofer distance
        std::vector<std::string> warnings() const;

        // 16 hex digits; FNV-1a over the canonical config text
        std::string hash() const;

        ScenarioConfig with_users(std::vector<UserPosition> replacement) const;
        ScenarioConfig without_obstacle() const;
    };
}
