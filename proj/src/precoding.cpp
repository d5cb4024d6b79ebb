// SPDX-License-Identifier: Apache-2.0
#include "airybeam/precoding.hpp"
#include "airybeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace airybeam
{
    double to_db(double power) noexcept
    {
        return power > 0.0 ? 10.0 * std::log10(power) : -std::numeric_limits<double>::infinity();
    }

    PrecodingResult rzf_precoder(const ChannelMatrix &effective, const Eigen::MatrixXcd &beams, double tx_power,
                                 double epsilon)
    {
        const Eigen::MatrixXcd &h = effective.entries;
        const Eigen::Index k = h.rows();
        if (effective.kind != ChannelKind::effective || h.cols() != k)
            throw ArgumentError("RZF expects a square effective channel.");
        if (beams.cols() != k)
            throw ArgumentError("Codebook must have one column per user.");
        if (!(tx_power > 0.0))
            throw ArgumentError("Transmit power must be positive.");
        if (!(epsilon >= 0.0))
            throw ArgumentError("Regularization must be non-negative.");
        if (!h.allFinite())
            throw NumericalError("Effective channel contains non-finite entries.");

        if (epsilon == 0.0)
        {
            const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
            const auto &s = svd.singularValues();
            const double smax = s(0);
            const double smin = s(k - 1);
            if (!(smin > kSingularRatio * smax))
                throw SingularChannelError("Effective channel is singular for zero forcing.", smin);
        }

        const Eigen::MatrixXcd gram = h * h.adjoint() + epsilon * Eigen::MatrixXcd::Identity(k, k);
        const Eigen::MatrixXcd unscaled = h.adjoint() * gram.partialPivLu().solve(Eigen::MatrixXcd::Identity(k, k));
        const double norm = (beams * unscaled).squaredNorm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw NumericalError("Precoder normalization failed.");

        PrecodingResult out;
        out.alpha = std::sqrt(tx_power / norm);
        out.baseband = out.alpha * unscaled;
        out.product = h * out.baseband;
        out.transmit_power = (beams * out.baseband).squaredNorm();
        return out;
    }

    MetricsRecord link_metrics(const ChannelMatrix &effective, const PrecodingResult &precoding, double noise_power)
    {
        if (!(noise_power > 0.0))
            throw ArgumentError("Noise power must be positive.");
        const Eigen::MatrixXcd &h = effective.entries;
        const Eigen::Index k = h.rows();
        if (precoding.product.rows() != k || precoding.product.cols() != k)
            throw ArgumentError("Precoder does not match the channel dimensions.");

        MetricsRecord m;
        const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
        const auto &s = svd.singularValues();
        m.singular_values.assign(s.data(), s.data() + s.size());
        const double smin = m.singular_values.back();
        m.singular = !(smin > 0.0);
        m.condition_number = m.singular ? std::numeric_limits<double>::infinity() : m.singular_values.front() / smin;

        m.coupling_db.resize(k, k);
        for (Eigen::Index r = 0; r < k; ++r)
            for (Eigen::Index c = 0; c < k; ++c)
                m.coupling_db(r, c) = to_db(std::norm(h(r, c)));

        m.alpha_power = precoding.alpha * precoding.alpha;
        m.transmit_power = precoding.transmit_power;
        const Eigen::MatrixXcd target = precoding.alpha * Eigen::MatrixXcd::Identity(k, k);
        m.zf_residual = (precoding.product - target).norm() / target.norm();
        m.equalized = m.zf_residual < kEqualizedTolerance;

        double weakest = std::numeric_limits<double>::infinity();
        double rate_sum = 0.0;
        for (Eigen::Index r = 0; r < k; ++r)
        {
            double interference = 0.0;
            for (Eigen::Index c = 0; c < k; ++c)
                if (c != r)
                    interference += std::norm(precoding.product(r, c));
            const double sinr = std::norm(precoding.product(r, r)) / (interference + noise_power);
            m.user_sinr_db.push_back(to_db(sinr));
            weakest = std::min(weakest, sinr);
            rate_sum += std::log2(1.0 + sinr);
        }

        if (m.equalized)
        {
            const double sinr = m.alpha_power / noise_power;
            m.common_sinr_db = to_db(sinr);
            m.sum_rate = static_cast<double>(k) * std::log2(1.0 + sinr);
        }
        else
        {
            m.common_sinr_db = to_db(weakest);
            m.sum_rate = rate_sum;
        }
        return m;
    }

    MetricsRecord evaluate_link(const ChannelMatrix &effective, const Eigen::MatrixXcd &beams,
                                const ScenarioConfig &scenario)
    {
        const auto precoding = rzf_precoder(effective, beams, scenario.tx_power, scenario.rzf_epsilon);
        return link_metrics(effective, precoding, scenario.noise_power);
    }
}
