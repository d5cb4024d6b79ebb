// SPDX-License-Identifier: Apache-2.0
#include "airybeam/scenario.hpp"
#include "airybeam/config.hpp"
#include "airybeam/errors.hpp"

#include <array>
#include <cmath>
#include <cstdint>

namespace airybeam
{
    void ScenarioConfig::validate() const
    {
        if (users.empty())
            throw ConfigError("Scenario needs at least one user.");
        if (!(noise_power > 0.0) || !std::isfinite(noise_power))
            throw ConfigError("noise_power must be positive.");
        if (!(tx_power > 0.0) || !std::isfinite(tx_power))
            throw ConfigError("tx_power must be positive.");
        if (!(rzf_epsilon >= 0.0) || !std::isfinite(rzf_epsilon))
            throw ConfigError("rzf_epsilon must be non-negative.");
        for (const auto &user : users)
            user.validate();
        if (obstacle)
            obstacle->validate();

        const double lambda = carrier.wavelength();
        if (grid.spacing() > 0.25 * lambda * (1.0 + 1e-12))
            throw ConfigError("Grid spacing " + format_number(grid.spacing() / lambda) +
                              " lambda exceeds lambda/4; increase nx or shrink the window.");
        if (grid.window_width() < 4.0 * array.aperture())
            throw ConfigError("Grid window must be at least 4x the array aperture.");
    }

    std::vector<std::string> ScenarioConfig::warnings() const
    {
        std::vector<std::string> out;
        const double limit = fraunhofer_distance(array, carrier);
        for (const auto &user : users)
        {
            if (std::hypot(user.x, user.z) >= limit)
                out.push_back("user '" + user.label + "' lies beyond the Fraunhofer distance (" +
                              format_number(limit / carrier.wavelength()) + " lambda)");
        }
        return out;
    }

    std::string ScenarioConfig::hash() const
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const unsigned char ch : to_config_text(*this))
        {
            h ^= ch;
            h *= 0x100000001b3ull;
        }
        static constexpr char digits[] = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i, h >>= 4)
            out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        return out;
    }

    ScenarioConfig ScenarioConfig::with_users(std::vector<UserPosition> replacement) const
    {
        ScenarioConfig copy = *this;
        copy.users = std::move(replacement);
        return copy;
    }

    ScenarioConfig ScenarioConfig::without_obstacle() const
    {
        ScenarioConfig copy = *this;
        copy.obstacle.reset();
        return copy;
    }
}
