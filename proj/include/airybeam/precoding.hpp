// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "airybeam/channels.hpp"

#include <Eigen/Dense>

#include <vector>

namespace airybeam
{
    struct PrecodingResult
    {
        Eigen::MatrixXcd baseband; // W_BB = alpha * H^H (H H^H + eps I)^-1
        double alpha = 0.0;        // real, positive
        Eigen::MatrixXcd product;  // H_eff * W_BB
        double transmit_power = 0.0; // ||W_RF W_BB||_F^2
    };

    // Regularized zero forcing with total-power normalization. eps = 0 is plain ZF and throws
    // SingularChannelError when sigma_min / sigma_max < kSingularRatio.
    PrecodingResult rzf_precoder(const ChannelMatrix &effective, const Eigen::MatrixXcd &beams, double tx_power,
                                 double epsilon);

    inline constexpr double kSingularRatio = 1e-8;

    // Relative deviation from alpha * I below which the streams count as fully decoupled
    inline constexpr double kEqualizedTolerance = 1e-3;

    struct MetricsRecord
    {
        double condition_number = 0.0; // +inf when sigma_min == 0
        std::vector<double> singular_values; // descending
        double alpha_power = 0.0;
        double common_sinr_db = 0.0;
        double sum_rate = 0.0;
        Eigen::MatrixXd coupling_db; // 10 log10 |h_kj|^2 of the raw effective channel
        std::vector<double> user_sinr_db; // |(HW)_kk|^2 / (sum_{j != k} |(HW)_kj|^2 + sigma^2)
        double zf_residual = 0.0;      // ||H W_BB - alpha I||_F / ||alpha I||_F
        double transmit_power = 0.0;
        bool equalized = true; // zf_residual < kEqualizedTolerance
        bool singular = false;

        double sigma_max() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
        double sigma_min() const { return singular_values.empty() ? 0.0 : singular_values.back(); }
    };

    // With equalized streams the common SINR is alpha^2 / sigma^2 and the sum rate K log2(1 + SINR).
    // Otherwise (regularization visibly active) the weakest user's SINR is reported and the sum rate
    // adds the per-user rates.
    MetricsRecord link_metrics(const ChannelMatrix &effective, const PrecodingResult &precoding, double noise_power);

    // rzf_precoder followed by link_metrics, with the scenario's power, noise and regularization
    MetricsRecord evaluate_link(const ChannelMatrix &effective, const Eigen::MatrixXcd &beams,
                                const ScenarioConfig &scenario);

    double to_db(double power) noexcept;
}
