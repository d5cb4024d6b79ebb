// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace airybeam
{
    using cplx = std::complex<double>;

    // Uniform transverse sampling x_i = (i - Nx/2) dx, i = 0..Nx-1, so x = 0 falls on bin Nx/2.
    //
    // A positive apodization width selects the absorbing boundary: each propagation step is band-limited
    // to the spatial frequencies that stay inside the window and the result is tapered by a super-Gaussian
    // border. A zero width gives the plain periodic (unitary) propagator.
    class GridSpec
    {
    public:
        GridSpec(std::size_t num_samples, double window_width, double apodization_width);

        std::size_t num_samples() const noexcept { return num_samples_; }
        double window_width() const noexcept { return window_width_; }
        double spacing() const noexcept { return spacing_; }
        double apodization_width() const noexcept { return apodization_width_; }
        bool absorbing() const noexcept { return apodization_width_ > 0.0; }

        double x(std::size_t index) const noexcept;
        double x_min() const noexcept { return -0.5 * window_width_; }
        double x_max() const noexcept { return x(num_samples_ - 1); }

        // Half-width of the region untouched by the absorbing border
        double interior_half_width() const noexcept { return 0.5 * window_width_ - apodization_width_; }

        // Nearest bin to x (may be out of range)
        long nearest_index(double x) const noexcept;

        // Window value at x: 1 in the interior, exp(-((|x| - x0) / w)^8) in the border, w = border / 2
        double apodization(double x) const noexcept;

        GridSpec without_apodization() const { return {num_samples_, window_width_, 0.0}; }

        friend bool operator==(const GridSpec &, const GridSpec &) = default;

    private:
        std::size_t num_samples_;
        double window_width_;
        double spacing_;
        double apodization_width_;
    };

    // Sampled scalar field on one z-plane
    struct ComplexField
    {
        std::vector<cplx> samples;
        GridSpec grid;
        double depth = 0.0;
        double wavelength = 0.0;

        ComplexField(GridSpec grid_, double depth_, double wavelength_);
        ComplexField(std::vector<cplx> samples_, GridSpec grid_, double depth_, double wavelength_);

        // sum |E|^2 dx
        double energy() const noexcept;
    };
}
