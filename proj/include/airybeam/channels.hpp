// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "airybeam/scenario.hpp"

#include <Eigen/Dense>

namespace airybeam
{
    enum class ChannelModel
    {
        greens_free_space,
        fresnel_diffraction
    };

    enum class ChannelKind
    {
        physical, // K x N, per element
        effective // K x K, per analog beam
    };

    const char *to_string(ChannelModel model) noexcept;
    const char *to_string(ChannelKind kind) noexcept;

    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries;
        ChannelModel model = ChannelModel::greens_free_space;
        ChannelKind kind = ChannelKind::effective;

        Eigen::Index users() const noexcept { return entries.rows(); }
        bool finite() const noexcept { return entries.allFinite(); }
    };

    // h_{k,n} = lambda / (4 pi r) exp(-j k0 r); free space only
    ChannelMatrix greens_channel(const ScenarioConfig &scenario);

    ChannelMatrix effective_channel_greens(const ChannelMatrix &physical, const Eigen::MatrixXcd &beams);

    // Field of one beam at every user: lambda * E(x_k, z_k) after the blocked cascade.
    // The lambda factor expresses the field in wavelength-normalized amplitude so that entries have the
    // same order of magnitude as the free-space model.
    Eigen::VectorXcd diffraction_response(const ScenarioConfig &scenario, const Eigen::VectorXcd &beam);

    // Column j = diffraction_response(beams.col(j)); one cascade per beam and per distinct user depth
    ChannelMatrix effective_channel_diffraction(const ScenarioConfig &scenario, const Eigen::MatrixXcd &beams);

    struct ModelFit
    {
        cplx scale;      // c minimizing ||target - c * source||_F
        double residual; // ||target - c * source||_F / ||target||_F
    };

    ModelFit fit_model_scale(const Eigen::MatrixXcd &target, const Eigen::MatrixXcd &source);

    // Fit of the free-space Green's effective channel onto the diffraction model for traditional beams,
    // evaluated on the scenario with its obstacle removed: greens ~= scale * diffraction
    ModelFit calibrate_models(const ScenarioConfig &scenario);

    // Green's effective channel expressed on the diffraction scale (divided by the calibration constant)
    ChannelMatrix calibrated_greens_effective(const ScenarioConfig &scenario, const Eigen::MatrixXcd &beams,
                                              const ModelFit &fit);
}
