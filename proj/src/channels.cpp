// SPDX-License-Identifier: Apache-2.0
#include "airybeam/channels.hpp"
#include "airybeam/beams.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace airybeam
{
    const char *to_string(ChannelModel model) noexcept
    {
        return model == ChannelModel::greens_free_space ? "greens_free_space" : "fresnel_diffraction";
    }

    const char *to_string(ChannelKind kind) noexcept
    {
        return kind == ChannelKind::physical ? "physical" : "effective";
    }

    ChannelMatrix greens_channel(const ScenarioConfig &scenario)
    {
        if (scenario.obstacle)
            throw ModelMismatchError("The free-space Green's model ignores the obstacle; "
                                     "use the diffraction channel for blocked scenarios.");
        const double lambda = scenario.carrier.wavelength();
        const double k0 = scenario.carrier.wavenumber();
        const auto k_users = static_cast<Eigen::Index>(scenario.users.size());
        const auto n = static_cast<Eigen::Index>(scenario.array.num_elements());

        ChannelMatrix h{Eigen::MatrixXcd(k_users, n), ChannelModel::greens_free_space, ChannelKind::physical};
        for (Eigen::Index k = 0; k < k_users; ++k)
        {
            const auto &user = scenario.users[static_cast<std::size_t>(k)];
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double r = std::hypot(user.x - scenario.array.element_x(static_cast<std::size_t>(i)), user.z);
                h.entries(k, i) = std::polar(lambda / (4.0 * kPi * r), -k0 * r);
            }
        }
        return h;
    }

    ChannelMatrix effective_channel_greens(const ChannelMatrix &physical, const Eigen::MatrixXcd &beams)
    {
        if (physical.kind != ChannelKind::physical)
            throw ArgumentError("Expected a physical (per-element) channel.");
        if (physical.entries.cols() != beams.rows())
            throw ArgumentError("Channel has " + std::to_string(physical.entries.cols()) + " columns but the codebook has " +
                                std::to_string(beams.rows()) + " rows.");
        return {physical.entries * beams, physical.model, ChannelKind::effective};
    }

    Eigen::VectorXcd diffraction_response(const ScenarioConfig &scenario, const Eigen::VectorXcd &beam)
    {
        const GridSpec &grid = scenario.grid;
        for (const auto &user : scenario.users)
            if (!(std::abs(user.x) <= grid.interior_half_width()))
                throw ConfigError("User '" + user.label + "' lies outside the usable grid window.");

        std::vector<double> depths;
        for (const auto &user : scenario.users)
            depths.push_back(user.z);
        std::sort(depths.begin(), depths.end());
        depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

        const auto aperture = embed_aperture(std::span<const cplx>(beam.data(), static_cast<std::size_t>(beam.size())),
                                             scenario.array, grid, scenario.carrier);
        const auto fields = propagate_blocked(aperture, scenario.obstacle, depths);

        const double lambda = scenario.carrier.wavelength();
        Eigen::VectorXcd out(static_cast<Eigen::Index>(scenario.users.size()));
        for (std::size_t k = 0; k < scenario.users.size(); ++k)
        {
            const auto &user = scenario.users[k];
            const auto slot = std::lower_bound(depths.begin(), depths.end(), user.z) - depths.begin();
            out(static_cast<Eigen::Index>(k)) = lambda * sample_field(fields[static_cast<std::size_t>(slot)], user.x);
        }
        return out;
    }

    ChannelMatrix effective_channel_diffraction(const ScenarioConfig &scenario, const Eigen::MatrixXcd &beams)
    {
        if (beams.rows() != static_cast<Eigen::Index>(scenario.array.num_elements()))
            throw ArgumentError("Codebook rows must match the number of array elements.");
        ChannelMatrix h{Eigen::MatrixXcd(static_cast<Eigen::Index>(scenario.users.size()), beams.cols()),
                        ChannelModel::fresnel_diffraction, ChannelKind::effective};
        for (Eigen::Index j = 0; j < beams.cols(); ++j)
            h.entries.col(j) = diffraction_response(scenario, beams.col(j));
        return h;
    }

    ModelFit fit_model_scale(const Eigen::MatrixXcd &target, const Eigen::MatrixXcd &source)
    {
        if (target.rows() != source.rows() || target.cols() != source.cols())
            throw ArgumentError("Calibration needs matrices of equal shape.");
        const double source_norm = source.squaredNorm();
        const double target_norm = target.squaredNorm();
        if (!(source_norm > 0.0) || !(target_norm > 0.0))
            throw NumericalError("Calibration is undefined for an all-zero channel.");
        // <source, target> / <source, source>
        const cplx scale = (source.conjugate().cwiseProduct(target)).sum() / source_norm;
        const double residual = (target - scale * source).norm() / std::sqrt(target_norm);
        return {scale, residual};
    }

    ModelFit calibrate_models(const ScenarioConfig &scenario)
    {
        const ScenarioConfig free = scenario.without_obstacle();
        const Codebook book = build_codebook(free, strategy::TradAll{});
        const ChannelMatrix greens = effective_channel_greens(greens_channel(free), book.weights);
        const ChannelMatrix diffraction = effective_channel_diffraction(free, book.weights);
        return fit_model_scale(greens.entries, diffraction.entries);
    }

    ChannelMatrix calibrated_greens_effective(const ScenarioConfig &scenario, const Eigen::MatrixXcd &beams,
                                              const ModelFit &fit)
    {
        ChannelMatrix h = effective_channel_greens(greens_channel(scenario), beams);
        h.entries /= fit.scale;
        return h;
    }
}
