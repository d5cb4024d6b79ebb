// SPDX-License-Identifier: Apache-2.0
#include "airybeam/propagation.hpp"
#include "airybeam/errors.hpp"
#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace airybeam
{
    namespace
    {
        constexpr cplx kJ{0.0, 1.0};

        void require_wavelength(const ComplexField &field)
        {
            if (!(field.wavelength > 0.0))
                throw ArgumentError("Field carries no wavelength.");
        }

        void apodize(std::vector<cplx> &samples, const GridSpec &grid)
        {
            if (!grid.absorbing())
                return;
            for (std::size_t i = 0; i < samples.size(); ++i)
                samples[i] *= grid.apodization(grid.x(i));
        }
    }

    ComplexField embed_aperture(std::span<const cplx> weights, const ArrayGeometry &array, const GridSpec &grid,
                                const Carrier &carrier)
    {
        if (weights.size() != array.num_elements())
            throw ArgumentError("Got " + std::to_string(weights.size()) + " weights for " +
                                std::to_string(array.num_elements()) + " elements.");

        ComplexField field(grid, 0.0, carrier.wavelength());
        const double limit = grid.interior_half_width();
        const double inv_dx = 1.0 / grid.spacing();
        for (std::size_t n = 0; n < weights.size(); ++n)
        {
            const double x = array.element_x(n);
            const long index = grid.nearest_index(x);
            if (std::abs(x) > limit || index < 0 || index >= static_cast<long>(grid.num_samples()))
                throw ConfigError("Array element " + std::to_string(n + 1) + " at x = " + std::to_string(x) +
                                  " m lies outside the usable grid window.");
            field.samples[static_cast<std::size_t>(index)] += weights[n] * inv_dx;
        }
        return field;
    }

    ComplexField propagate_angular_spectrum(const ComplexField &field, double distance)
    {
        if (!(distance >= 0.0) || !std::isfinite(distance))
            throw ArgumentError("Propagation distance must be non-negative and finite.");
        require_wavelength(field);
        if (distance == 0.0)
            return field;

        const GridSpec &grid = field.grid;
        const std::size_t nx = grid.num_samples();
        const double lambda = field.wavelength;
        const double k0 = 2.0 * kPi / lambda;

        // Spectral support that stays inside the window over this step (only in absorbing mode)
        const double band_limit = grid.absorbing() ? grid.window_width() / (2.0 * lambda * distance)
                                                   : std::numeric_limits<double>::infinity();

        std::vector<cplx> data = field.samples;
        detail::fft_forward(data);
        const double chirp = kPi * lambda * distance;
        for (std::size_t i = 0; i < nx; ++i)
        {
            const double f = detail::fft_frequency(i, nx, grid.spacing());
            if (std::abs(f) > band_limit)
                data[i] = 0.0;
            else
                data[i] *= std::polar(1.0, chirp * f * f);
        }
        detail::fft_inverse(data);

        const cplx carrier = std::polar(1.0, -k0 * distance);
        for (auto &value : data)
            value *= carrier;
        apodize(data, grid);
        return {std::move(data), grid, field.depth + distance, lambda};
    }

    ComplexField propagate_direct_fresnel(const ComplexField &field, double distance)
    {
        if (!(distance > 0.0) || !std::isfinite(distance))
            throw ArgumentError("Direct Fresnel propagation needs a positive distance; use the input for z = 0.");
        require_wavelength(field);

        const GridSpec &grid = field.grid;
        const long nx = static_cast<long>(grid.num_samples());
        const double lambda = field.wavelength;
        const double k0 = 2.0 * kPi / lambda;
        const double dx = grid.spacing();

        // The kernel only depends on the bin offset; tabulate it once
        std::vector<cplx> kernel(static_cast<std::size_t>(2 * nx - 1));
        for (long m = -(nx - 1); m <= nx - 1; ++m)
        {
            const double s = static_cast<double>(m) * dx;
            kernel[static_cast<std::size_t>(m + nx - 1)] = std::polar(1.0, -k0 * s * s / (2.0 * distance));
        }
        // sqrt(j / (lambda z)) gives the exp(-j k0 s^2 / 2z) kernel unit gain at zero spatial frequency
        const cplx prefactor = std::sqrt(kJ / (lambda * distance)) * std::polar(1.0, -k0 * distance) * dx;

        std::vector<long> support;
        for (long j = 0; j < nx; ++j)
            if (field.samples[static_cast<std::size_t>(j)] != 0.0)
                support.push_back(j);

        std::vector<cplx> out(static_cast<std::size_t>(nx));
        for (long i = 0; i < nx; ++i)
        {
            cplx acc = 0.0;
            for (const long j : support)
                acc += field.samples[static_cast<std::size_t>(j)] * kernel[static_cast<std::size_t>(i - j + nx - 1)];
            out[static_cast<std::size_t>(i)] = prefactor * acc;
        }
        return {std::move(out), grid, field.depth + distance, lambda};
    }

    ComplexField apply_mask(const ComplexField &field, const KnifeEdgeObstacle &obstacle)
    {
        if (std::abs(field.depth - obstacle.depth) > field.grid.spacing())
            throw DepthMismatchError("Mask applied at depth " + std::to_string(field.depth) +
                                     " m but the obstacle sits at " + std::to_string(obstacle.depth) + " m.");
        ComplexField out = field;
        for (std::size_t i = 0; i < out.samples.size(); ++i)
            if (obstacle.blocks(out.grid.x(i)))
                out.samples[i] = 0.0;
        return out;
    }

    ComplexField propagate_blocked(const ComplexField &aperture, const std::optional<KnifeEdgeObstacle> &obstacle,
                                   double target_depth)
    {
        const double depth = target_depth;
        return std::move(propagate_blocked(aperture, obstacle, std::span<const double>(&depth, 1)).front());
    }

    std::vector<ComplexField> propagate_blocked(const ComplexField &aperture,
                                                const std::optional<KnifeEdgeObstacle> &obstacle,
                                                std::span<const double> target_depths)
    {
        std::optional<ComplexField> masked;
        std::vector<ComplexField> out;
        out.reserve(target_depths.size());
        for (const double target : target_depths)
        {
            if (!(target > aperture.depth) || !std::isfinite(target))
                throw ArgumentError("Target depth must lie beyond the aperture plane.");
            const bool through_mask = obstacle && obstacle->depth > aperture.depth && target > obstacle->depth;
            if (!through_mask)
            {
                out.push_back(propagate_angular_spectrum(aperture, target - aperture.depth));
                continue;
            }
            if (!masked)
            {
                ComplexField at_plane = propagate_angular_spectrum(aperture, obstacle->depth - aperture.depth);
                at_plane.depth = obstacle->depth;
                masked = apply_mask(at_plane, *obstacle);
            }
            ComplexField result = propagate_angular_spectrum(*masked, target - obstacle->depth);
            result.depth = target;
            out.push_back(std::move(result));
        }
        return out;
    }

    cplx sample_field(const ComplexField &field, double x)
    {
        const GridSpec &grid = field.grid;
        if (!(std::abs(x) <= grid.interior_half_width()))
            throw ArgumentError("Sample position " + std::to_string(x) + " m lies outside the usable window.");
        const double position = x / grid.spacing() + 0.5 * static_cast<double>(grid.num_samples());
        const double base = std::floor(position);
        const auto i = static_cast<std::size_t>(base);
        const double t = position - base;
        if (t == 0.0 || i + 1 >= field.samples.size())
            return field.samples[i];
        return field.samples[i] * (1.0 - t) + field.samples[i + 1] * t;
    }

    IntensityMap intensity_map(const ComplexField &aperture, const std::optional<KnifeEdgeObstacle> &obstacle,
                               std::span<const double> depths)
    {
        if (depths.empty())
            throw ArgumentError("Intensity map needs at least one depth.");
        for (std::size_t i = 0; i < depths.size(); ++i)
        {
            if (!(depths[i] > 0.0))
                throw ArgumentError("Intensity map depths must be positive.");
            if (i > 0 && !(depths[i] > depths[i - 1]))
                throw ArgumentError("Intensity map depths must be strictly increasing.");
        }

        const GridSpec &grid = aperture.grid;
        const std::size_t nx = grid.num_samples();
        IntensityMap map;
        map.depths.assign(depths.begin(), depths.end());
        map.x.resize(nx);
        for (std::size_t i = 0; i < nx; ++i)
            map.x[i] = grid.x(i);

        const auto fields = propagate_blocked(aperture, obstacle, depths);
        map.db.resize(depths.size() * nx);
        for (std::size_t r = 0; r < fields.size(); ++r)
        {
            for (std::size_t c = 0; c < nx; ++c)
            {
                const double intensity = std::norm(fields[r].samples[c]);
                map.db[r * nx + c] = intensity;
                if (intensity > map.peak_intensity)
                {
                    map.peak_intensity = intensity;
                    map.peak_row = r;
                    map.peak_column = c;
                }
            }
        }
        if (!(map.peak_intensity > 0.0))
            throw NumericalError("Intensity map is identically zero.");
        for (auto &value : map.db)
        {
            const double db = value > 0.0 ? 10.0 * std::log10(value / map.peak_intensity) : kIntensityFloorDb;
            value = std::max(db, kIntensityFloorDb);
        }
        map.db[map.peak_row * nx + map.peak_column] = 0.0;
        return map;
    }
}
