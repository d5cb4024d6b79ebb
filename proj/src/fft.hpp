// SPDX-License-Identifier: Apache-2.0
// Thin FFTW wrapper. Plans are created once per size under a lock; execution goes through
// fftw_execute_dft on caller-owned buffers, which FFTW documents as thread-safe.
#pragma once

#include "airybeam/grid.hpp"

#include <vector>

namespace airybeam::detail
{
    // In-place unnormalized DFT; forward uses exp(-2 pi j k n / N)
    void fft_forward(std::vector<cplx> &data);

    // In-place inverse DFT including the 1/N factor
    void fft_inverse(std::vector<cplx> &data);

    // Spatial frequency of FFT bin i for spacing dx (FFT ordering, cycles/m)
    double fft_frequency(std::size_t index, std::size_t size, double spacing) noexcept;
}
