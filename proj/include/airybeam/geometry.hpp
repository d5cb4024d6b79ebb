// SPDX-License-Identifier: Apache-2.0
//
// Units and coordinate conventions
// - All lengths are meters, angles radians, powers watts.
// - 2D geometry (x transverse, z depth). The array sits on z = 0, centered on x = 0.
// - Time convention exp(+j w t): propagation phases are exp(-j k0 r).
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace airybeam
{
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s
    inline constexpr double kPi = 3.14159265358979323846;

    class Carrier
    {
    public:
        explicit Carrier(double frequency_hz);

        double frequency() const noexcept { return frequency_; }
        double wavelength() const noexcept { return wavelength_; }
        double wavenumber() const noexcept { return wavenumber_; }

        // Convert a length given in wavelengths to meters
        double lambda(double multiples) const noexcept { return multiples * wavelength_; }

    private:
        double frequency_;
        double wavelength_;
        double wavenumber_;
    };

    // Uniform linear array with elements at x_n = (n - (N+1)/2) d, n = 1..N
    class ArrayGeometry
    {
    public:
        ArrayGeometry(std::size_t num_elements, double spacing);

        std::size_t num_elements() const noexcept { return element_x_.size(); }
        double spacing() const noexcept { return spacing_; }
        double aperture() const noexcept { return static_cast<double>(element_x_.size()) * spacing_; }
        std::span<const double> element_x() const noexcept { return element_x_; }
        double element_x(std::size_t index) const { return element_x_.at(index); }

    private:
        double spacing_;
        std::vector<double> element_x_;
    };

    struct UserPosition
    {
        double x = 0.0; // transverse [m]
        double z = 0.0; // depth [m], > 0
        std::string label;

        void validate() const;
    };

    enum class BlockedSide
    {
        below_edge, // blocks x <= edge_x
        above_edge  // blocks x >= edge_x
    };

    // Opaque half-plane screen at a fixed depth; the edge itself belongs to the blocked side
    struct KnifeEdgeObstacle
    {
        double depth = 0.0;
        double edge_x = 0.0;
        BlockedSide blocked_side = BlockedSide::below_edge;

        void validate() const;
        bool blocks(double x) const noexcept;
        double transmittance(double x) const noexcept { return blocks(x) ? 0.0 : 1.0; }
    };

    enum class Illumination
    {
        shadowed,
        bright
    };

    const char *to_string(Illumination illumination) noexcept;
    const char *to_string(BlockedSide side) noexcept;

    // 2 D^2 / lambda with D = N d
    double fraunhofer_distance(const ArrayGeometry &array, const Carrier &carrier);

    // atan2(x, z); negative x gives a negative angle
    double geometric_angle(const UserPosition &user);

    // Straight-ray test from the array center; users at or in front of the obstacle plane are bright
    Illumination classify_user(const UserPosition &user, const KnifeEdgeObstacle &obstacle,
                               const ArrayGeometry &array);

    double degrees(double radians) noexcept;
    double radians(double degrees) noexcept;
}
