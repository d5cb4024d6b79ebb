// SPDX-License-Identifier: Apache-2.0
#include "airybeam/grid.hpp"
#include "airybeam/errors.hpp"

#include <cmath>
#include <string>

namespace airybeam
{
    GridSpec::GridSpec(std::size_t num_samples, double window_width, double apodization_width)
        : num_samples_(num_samples), window_width_(window_width), apodization_width_(apodization_width)
    {
        if (num_samples < 2 || (num_samples & (num_samples - 1)) != 0)
            throw ConfigError("Grid size must be a power of two, got " + std::to_string(num_samples) + ".");
        if (!(window_width > 0.0) || !std::isfinite(window_width))
            throw ConfigError("Grid window width must be positive and finite.");
        if (!(apodization_width >= 0.0) || !(apodization_width < 0.5 * window_width))
            throw ConfigError("Apodization width must lie in [0, window/2).");
        spacing_ = window_width / static_cast<double>(num_samples);
    }

    double GridSpec::x(std::size_t index) const noexcept
    {
        return (static_cast<double>(index) - 0.5 * static_cast<double>(num_samples_)) * spacing_;
    }

    long GridSpec::nearest_index(double x) const noexcept
    {
        return std::lround(x / spacing_ + 0.5 * static_cast<double>(num_samples_));
    }

    double GridSpec::apodization(double x) const noexcept
    {
        if (apodization_width_ <= 0.0)
            return 1.0;
        const double x0 = 0.5 * window_width_ - apodization_width_;
        const double excess = std::abs(x) - x0;
        if (excess <= 0.0)
            return 1.0;
        const double u = excess / (0.5 * apodization_width_);
        const double u2 = u * u;
        const double u4 = u2 * u2;
        return std::exp(-u4 * u4);
    }

    ComplexField::ComplexField(GridSpec grid_, double depth_, double wavelength_)
        : samples(grid_.num_samples()), grid(grid_), depth(depth_), wavelength(wavelength_)
    {
    }

    ComplexField::ComplexField(std::vector<cplx> samples_, GridSpec grid_, double depth_, double wavelength_)
        : samples(std::move(samples_)), grid(grid_), depth(depth_), wavelength(wavelength_)
    {
        if (samples.size() != grid.num_samples())
            throw ArgumentError("Field has " + std::to_string(samples.size()) + " samples but the grid has " +
                                std::to_string(grid.num_samples()) + ".");
    }

    double ComplexField::energy() const noexcept
    {
        double sum = 0.0;
        for (const auto &s : samples)
            sum += std::norm(s);
        return sum * grid.spacing();
    }
}
