// SPDX-License-Identifier: Apache-2.0
#include "airybeam/geometry.hpp"
#include "airybeam/errors.hpp"

#include <cmath>
#include <numeric>

namespace airybeam
{
    Carrier::Carrier(double frequency_hz)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw ConfigError("Carrier frequency must be positive and finite.");
        frequency_ = frequency_hz;
        wavelength_ = kSpeedOfLight / frequency_hz;
        wavenumber_ = 2.0 * kPi / wavelength_;
    }

    ArrayGeometry::ArrayGeometry(std::size_t num_elements, double spacing)
        : spacing_(spacing)
    {
        if (num_elements == 0)
            throw ConfigError("Array must have at least one element.");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw ConfigError("Element spacing must be positive and finite.");

        // Fill mirrored pairs from the same magnitude so x_n + x_{N+1-n} == 0 holds bit-exactly
        element_x_.resize(num_elements);
        const double center = 0.5 * static_cast<double>(num_elements + 1);
        for (std::size_t n = 1; n <= num_elements / 2; ++n)
        {
            const double x = (static_cast<double>(n) - center) * spacing;
            element_x_[n - 1] = x;
            element_x_[num_elements - n] = -x;
        }
        if (num_elements % 2 == 1)
            element_x_[num_elements / 2] = 0.0;
    }

    void UserPosition::validate() const
    {
        if (!(z > 0.0) || !std::isfinite(z) || !std::isfinite(x))
            throw ConfigError("User '" + label + "' must have finite coordinates with z > 0.");
    }

    void KnifeEdgeObstacle::validate() const
    {
        if (!(depth > 0.0) || !std::isfinite(depth) || !std::isfinite(edge_x))
            throw ConfigError("Obstacle depth must be positive and the edge position finite.");
    }

    bool KnifeEdgeObstacle::blocks(double x) const noexcept
    {
        return blocked_side == BlockedSide::below_edge ? x <= edge_x : x >= edge_x;
    }

    const char *to_string(Illumination illumination) noexcept
    {
        return illumination == Illumination::shadowed ? "shadowed" : "bright";
    }

    const char *to_string(BlockedSide side) noexcept
    {
        return side == BlockedSide::below_edge ? "below_edge" : "above_edge";
    }

    double fraunhofer_distance(const ArrayGeometry &array, const Carrier &carrier)
    {
        const double d = array.aperture();
        return 2.0 * d * d / carrier.wavelength();
    }

    double geometric_angle(const UserPosition &user)
    {
        return std::atan2(user.x, user.z);
    }

    Illumination classify_user(const UserPosition &user, const KnifeEdgeObstacle &obstacle,
                               const ArrayGeometry &array)
    {
        if (user.z <= obstacle.depth)
            return Illumination::bright;

        const auto xs = array.element_x();
        const double origin = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());

        // Ray (origin, 0) -> (x, z) evaluated at the obstacle plane
        const double t = obstacle.depth / user.z;
        const double crossing = origin + t * (user.x - origin);
        return obstacle.blocks(crossing) ? Illumination::shadowed : Illumination::bright;
    }

    double degrees(double radians) noexcept { return radians * 180.0 / kPi; }
    double radians(double degrees) noexcept { return degrees * kPi / 180.0; }
}
