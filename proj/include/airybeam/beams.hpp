// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "airybeam/geometry.hpp"
#include "airybeam/grid.hpp"

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace airybeam
{
    // Cubic-phase aperture profile: phi(x) = k0 x^2/(2F) - k0 sin(theta) x + (2 pi / (3 lambda)) B (x/F)^3
    struct AiryParams
    {
        double bending = 0.0;      // B
        double focal = 1.0;        // F [m]
        double launch_angle = 0.0; // theta [rad]

        void validate() const;
    };

    struct TraditionalBeam
    {
        UserPosition target;
    };

    using BeamDescriptor = std::variant<TraditionalBeam, AiryParams>;

    struct BeamWeights
    {
        Eigen::VectorXcd weights; // unit norm
        BeamDescriptor descriptor;
    };

    // (1/sqrt(N)) exp(+j k0 r_n): conjugates the free-space phase towards the target
    BeamWeights traditional_focus(const ArrayGeometry &array, const Carrier &carrier, const UserPosition &target);

    std::vector<double> airy_phase(const ArrayGeometry &array, const Carrier &carrier, const AiryParams &params);
    BeamWeights airy_weights(const ArrayGeometry &array, const Carrier &carrier, const AiryParams &params);

    // Largest |phi_{n+1} - phi_n| of the unwrapped profile; >= pi means the array undersamples it
    double max_phase_step(const ArrayGeometry &array, const Carrier &carrier, const AiryParams &params);

    namespace strategy
    {
        struct TradAll
        {
        };

        // Shared (B, F); theta_k = geometric angle of user k
        struct AiryGeo
        {
            double bending = -25.0;
            double focal = 1.75;
        };

        // Airy beam for shadowed users (theta = geometric angle + offset), traditional for bright ones
        struct Mixed
        {
            double bending = -44.0;
            double focal = 1.50;
            double angle_offset = 0.0;
        };
    }

    using CodebookStrategy = std::variant<strategy::TradAll, strategy::AiryGeo, strategy::Mixed>;

    std::string strategy_name(const CodebookStrategy &strategy);

    struct ScenarioConfig;

    struct Codebook
    {
        Eigen::MatrixXcd weights; // N x K, one column per RF chain
        std::vector<BeamDescriptor> beams;

        std::size_t num_beams() const noexcept { return beams.size(); }
    };

    Codebook build_codebook(const ScenarioConfig &scenario, const CodebookStrategy &strategy);

    // Geometric steering: theta = atan2(x, z) + angle_offset
    AiryParams geometric_airy(const UserPosition &user, double bending, double focal, double angle_offset = 0.0);
}
