// SPDX-License-Identifier: Apache-2.0
//
// Paraxial scalar propagation along z for fields sampled on a GridSpec.
//
// The angular-spectrum step multiplies the spectrum by exp(+j pi lambda z f^2) and applies the carrier
// phase exp(-j k0 z). With the exp(+j w t) convention this is the Fourier transform of the direct Fresnel
// kernel sqrt(j/(lambda z)) exp(-j k0 (x - x')^2 / (2 z)), so both paths agree sample by sample.
#pragma once

#include "airybeam/geometry.hpp"
#include "airybeam/grid.hpp"

#include <optional>
#include <span>
#include <vector>

namespace airybeam
{
    // Deposits each weight at the nearest bin as w / dx, so the field integrates to the weight
    ComplexField embed_aperture(std::span<const cplx> weights, const ArrayGeometry &array, const GridSpec &grid,
                                const Carrier &carrier);

    ComplexField propagate_angular_spectrum(const ComplexField &field, double distance);

    // O(Nx^2) quadrature of the Fresnel integral; reference implementation only
    ComplexField propagate_direct_fresnel(const ComplexField &field, double distance);

    // Zeroes the blocked side; the field must sit on the obstacle plane (within one grid step)
    ComplexField apply_mask(const ComplexField &field, const KnifeEdgeObstacle &obstacle);

    // Aperture -> obstacle plane -> mask -> target depth. The mask stage is skipped for targets at or before
    // the obstacle plane.
    ComplexField propagate_blocked(const ComplexField &aperture, const std::optional<KnifeEdgeObstacle> &obstacle,
                                   double target_depth);

    // Same cascade for several depths; the masked obstacle-plane field is computed once and shared
    std::vector<ComplexField> propagate_blocked(const ComplexField &aperture,
                                                const std::optional<KnifeEdgeObstacle> &obstacle,
                                                std::span<const double> target_depths);

    // Linear interpolation; x must lie in the interior (outside the absorbing border)
    cplx sample_field(const ComplexField &field, double x);

    struct IntensityMap
    {
        std::vector<double> depths;   // rows
        std::vector<double> x;        // columns
        std::vector<double> db;       // row-major, depths.size() x x.size()
        double peak_intensity = 0.0;  // |E|^2 of the 0 dB sample
        std::size_t peak_row = 0;
        std::size_t peak_column = 0;

        double at(std::size_t row, std::size_t column) const { return db[row * x.size() + column]; }
    };

    inline constexpr double kIntensityFloorDb = -60.0;

    // |E|^2 per depth, normalized to the global maximum, clipped at kIntensityFloorDb
    IntensityMap intensity_map(const ComplexField &aperture, const std::optional<KnifeEdgeObstacle> &obstacle,
                               std::span<const double> depths);
}
