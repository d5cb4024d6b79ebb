// SPDX-License-Identifier: Apache-2.0
#include "airybeam/validation.hpp"
#include "airybeam/beams.hpp"
#include "airybeam/channels.hpp"
#include "airybeam/precoding.hpp"
#include "airybeam/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace airybeam
{
    namespace
    {
        double relative_difference(const std::vector<cplx> &a, const std::vector<cplx> &b)
        {
            double diff = 0.0, ref = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                diff += std::norm(a[i] - b[i]);
                ref += std::norm(b[i]);
            }
            return std::sqrt(diff / ref);
        }

        CheckResult below(std::string name, double value, double threshold, std::string detail = {})
        {
            return {std::move(name), value, threshold, value < threshold, true, std::move(detail)};
        }
    }

    std::vector<cplx> random_band_limited(const GridSpec &grid, double max_frequency, double envelope,
                                          std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        constexpr int kWaves = 8;
        double freq[kWaves], phase[kWaves], amp[kWaves];
        for (int w = 0; w < kWaves; ++w)
        {
            freq[w] = (2.0 * unit(rng) - 1.0) * max_frequency;
            phase[w] = 2.0 * kPi * unit(rng);
            amp[w] = 0.2 + unit(rng);
        }
        const double center = (unit(rng) - 0.5) * envelope;
        std::vector<cplx> out(grid.num_samples());
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            const double x = grid.x(i);
            cplx sum = 0.0;
            for (int w = 0; w < kWaves; ++w)
                sum += std::polar(amp[w], 2.0 * kPi * freq[w] * x + phase[w]);
            const double u = (x - center) / envelope;
            out[i] = sum * std::exp(-u * u);
        }
        return out;
    }

    std::vector<CheckResult> run_validation(const ScenarioConfig &scenario, const ValidationOptions &options)
    {
        std::vector<CheckResult> results;
        const double lambda = scenario.carrier.wavelength();
        const GridSpec periodic = scenario.grid.without_apodization();
        std::mt19937_64 rng(options.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        // Energy conservation and semigroup with the unitary propagator
        double energy_error = 0.0, semigroup_error = 0.0, linearity_error = 0.0;
        for (std::size_t c = 0; c < options.cases; ++c)
        {
            const ComplexField f(random_band_limited(periodic, 2.0 / lambda, 10.0 * lambda, rng()), periodic, 0.0, lambda);
            const ComplexField g(random_band_limited(periodic, 2.0 / lambda, 10.0 * lambda, rng()), periodic, 0.0, lambda);
            const double z1 = (20.0 + 300.0 * unit(rng)) * lambda;
            const double z2 = (20.0 + 300.0 * unit(rng)) * lambda;

            const auto once = propagate_angular_spectrum(f, z1 + z2);
            const auto twice = propagate_angular_spectrum(propagate_angular_spectrum(f, z1), z2);
            energy_error = std::max(energy_error, std::abs(once.energy() - f.energy()) / f.energy());
            semigroup_error = std::max(semigroup_error, relative_difference(twice.samples, once.samples));

            const cplx a{0.3, -1.2}, b{-0.7, 0.4};
            ComplexField mix = f;
            for (std::size_t i = 0; i < mix.samples.size(); ++i)
                mix.samples[i] = a * f.samples[i] + b * g.samples[i];
            const auto pm = propagate_angular_spectrum(mix, z1);
            const auto pf = propagate_angular_spectrum(f, z1);
            const auto pg = propagate_angular_spectrum(g, z1);
            std::vector<cplx> combined(pm.samples.size());
            for (std::size_t i = 0; i < combined.size(); ++i)
                combined[i] = a * pf.samples[i] + b * pg.samples[i];
            linearity_error = std::max(linearity_error, relative_difference(pm.samples, combined));
        }
        results.push_back(below("propagator_energy_conservation", energy_error, 1e-10));
        results.push_back(below("propagator_semigroup", semigroup_error, 1e-9));
        results.push_back(below("propagator_linearity", linearity_error, 1e-12));

        // Angular spectrum vs direct quadrature on the interior half window
        if (options.include_direct_oracle)
        {
            double oracle_error = 0.0;
            const std::size_t oracle_cases = std::min<std::size_t>(options.cases, 5);
            for (std::size_t c = 0; c < oracle_cases; ++c)
            {
                const ComplexField f(random_band_limited(periodic, 0.1 / lambda, 10.0 * lambda, rng()), periodic, 0.0,
                                     lambda);
                const double z = (50.0 + 350.0 * unit(rng)) * lambda;
                const auto spectral = propagate_angular_spectrum(f, z);
                const auto direct = propagate_direct_fresnel(f, z);
                double diff = 0.0, peak = 0.0;
                for (std::size_t i = 0; i < periodic.num_samples(); ++i)
                {
                    if (std::abs(periodic.x(i)) > 0.25 * periodic.window_width())
                        continue;
                    diff = std::max(diff, std::abs(spectral.samples[i] - direct.samples[i]));
                    peak = std::max(peak, std::abs(direct.samples[i]));
                }
                oracle_error = std::max(oracle_error, diff / peak);
            }
            results.push_back(below("direct_fresnel_agreement", oracle_error, 1e-3, "max error / peak, interior half"));
        }

        // Gaussian beam width against the closed form
        {
            const double w0 = 4.0 * lambda;
            const double z = 200.0 * lambda;
            ComplexField f(periodic, 0.0, lambda);
            for (std::size_t i = 0; i < f.samples.size(); ++i)
            {
                const double u = periodic.x(i) / w0;
                f.samples[i] = std::exp(-u * u);
            }
            const auto out = propagate_angular_spectrum(f, z);
            double m0 = 0.0, m2 = 0.0;
            for (std::size_t i = 0; i < out.samples.size(); ++i)
            {
                const double p = std::norm(out.samples[i]);
                m0 += p;
                m2 += p * periodic.x(i) * periodic.x(i);
            }
            const double measured = 2.0 * std::sqrt(m2 / m0);
            const double rayleigh = kPi * w0 * w0 / lambda;
            const double expected = w0 * std::sqrt(1.0 + (z / rayleigh) * (z / rayleigh));
            results.push_back(below("gaussian_beam_width", std::abs(measured / expected - 1.0), 1e-2));
        }

        // Mask idempotence
        if (scenario.obstacle)
        {
            const ComplexField f(random_band_limited(scenario.grid, 1.0 / lambda, 20.0 * lambda, rng()), scenario.grid,
                                 scenario.obstacle->depth, lambda);
            const auto once = apply_mask(f, *scenario.obstacle);
            const auto twice = apply_mask(once, *scenario.obstacle);
            const bool same = twice.samples == once.samples;
            results.push_back({"mask_idempotence", same ? 0.0 : 1.0, 0.5, same, true, "bitwise"});
        }

        // Zero-forcing contract and power normalization on random well-conditioned channels
        {
            double zf_error = 0.0, power_error = 0.0;
            for (std::size_t c = 0; c < 5 * options.cases; ++c)
            {
                Eigen::MatrixXcd h(2, 2);
                do
                {
                    for (Eigen::Index i = 0; i < 4; ++i)
                        h(i) = cplx(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
                } while (Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues()(1) < 0.05);
                const auto book = build_codebook(scenario.with_users({{0.0, 100.0 * lambda, "a"}, {20.0 * lambda, 120.0 * lambda, "b"}}),
                                                 strategy::TradAll{});
                const ChannelMatrix channel{h, ChannelModel::greens_free_space, ChannelKind::effective};
                const auto p = rzf_precoder(channel, book.weights, scenario.tx_power, 0.0);
                const Eigen::MatrixXcd target = p.alpha * Eigen::MatrixXcd::Identity(2, 2);
                zf_error = std::max(zf_error, (p.product - target).norm() / target.norm());
                power_error = std::max(power_error, std::abs(p.transmit_power - scenario.tx_power) / scenario.tx_power);
            }
            results.push_back(below("zero_forcing_diagonal", zf_error, 1e-8));
            results.push_back(below("precoder_power", power_error, 1e-9));
        }

        // The published Airy tuples must be sampled without phase aliasing
        const double theta = scenario.users.empty() ? 0.0 : geometric_angle(scenario.users.front());
        for (const AiryParams &p : {AiryParams{-25.0, 1.75, theta}, AiryParams{-44.0, 1.50, theta - radians(2.9)}})
            results.push_back(below("phase_step_B" + std::to_string(static_cast<int>(p.bending)),
                                    max_phase_step(scenario.array, scenario.carrier, p), kPi));

        // Cross-model fit is reported, not gated
        try
        {
            ScenarioConfig free = scenario.without_obstacle();
            const auto fit = calibrate_models(free);
            CheckResult r = below("model_calibration_residual", fit.residual, 0.02,
                                  "|c| = " + std::to_string(std::abs(fit.scale)));
            r.gating = false;
            results.push_back(r);
        }
        catch (const std::exception &e)
        {
            results.push_back({"model_calibration_residual", 0.0, 0.02, false, false, e.what()});
        }
        return results;
    }
}
