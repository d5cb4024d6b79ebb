// SPDX-License-Identifier: Apache-2.0
#include "airybeam/beams.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/scenario.hpp"

#include <cmath>

namespace airybeam
{
    void AiryParams::validate() const
    {
        if (!(focal > 0.0) || !std::isfinite(focal))
            throw ArgumentError("Airy focal parameter must be positive.");
        if (!(std::abs(launch_angle) < 0.5 * kPi))
            throw ArgumentError("Airy launch angle must lie in (-pi/2, pi/2).");
        if (!std::isfinite(bending))
            throw ArgumentError("Airy bending coefficient must be finite.");
    }

    BeamWeights traditional_focus(const ArrayGeometry &array, const Carrier &carrier, const UserPosition &target)
    {
        target.validate();
        const auto n = static_cast<Eigen::Index>(array.num_elements());
        const double amplitude = 1.0 / std::sqrt(static_cast<double>(n));
        Eigen::VectorXcd w(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double r = std::hypot(target.x - array.element_x(static_cast<std::size_t>(i)), target.z);
            w(i) = std::polar(amplitude, carrier.wavenumber() * r);
        }
        return {std::move(w), TraditionalBeam{target}};
    }

    std::vector<double> airy_phase(const ArrayGeometry &array, const Carrier &carrier, const AiryParams &params)
    {
        params.validate();
        const double k0 = carrier.wavenumber();
        const double cubic = 2.0 * kPi / (3.0 * carrier.wavelength()) * params.bending;
        const double tilt = k0 * std::sin(params.launch_angle);
        std::vector<double> phase;
        phase.reserve(array.num_elements());
        for (const double x : array.element_x())
        {
            const double u = x / params.focal;
            phase.push_back(k0 * x * x / (2.0 * params.focal) - tilt * x + cubic * u * u * u);
        }
        return phase;
    }

    BeamWeights airy_weights(const ArrayGeometry &array, const Carrier &carrier, const AiryParams &params)
    {
        const auto phase = airy_phase(array, carrier, params);
        const double amplitude = 1.0 / std::sqrt(static_cast<double>(phase.size()));
        Eigen::VectorXcd w(static_cast<Eigen::Index>(phase.size()));
        for (std::size_t i = 0; i < phase.size(); ++i)
            w(static_cast<Eigen::Index>(i)) = std::polar(amplitude, phase[i]);
        return {std::move(w), params};
    }

    double max_phase_step(const ArrayGeometry &array, const Carrier &carrier, const AiryParams &params)
    {
        const auto phase = airy_phase(array, carrier, params);
        double step = 0.0;
        for (std::size_t i = 1; i < phase.size(); ++i)
            step = std::max(step, std::abs(phase[i] - phase[i - 1]));
        return step;
    }

    AiryParams geometric_airy(const UserPosition &user, double bending, double focal, double angle_offset)
    {
        return {bending, focal, geometric_angle(user) + angle_offset};
    }

    std::string strategy_name(const CodebookStrategy &strategy)
    {
        struct Visitor
        {
            std::string operator()(const strategy::TradAll &) const { return "trad_all"; }
            std::string operator()(const strategy::AiryGeo &) const { return "airy_geo"; }
            std::string operator()(const strategy::Mixed &) const { return "mixed"; }
        };
        return std::visit(Visitor{}, strategy);
    }

    Codebook build_codebook(const ScenarioConfig &scenario, const CodebookStrategy &strategy)
    {
        const auto &users = scenario.users;
        Codebook book;
        book.weights.resize(static_cast<Eigen::Index>(scenario.array.num_elements()),
                            static_cast<Eigen::Index>(users.size()));

        auto place = [&](std::size_t k, BeamWeights beam) {
            book.weights.col(static_cast<Eigen::Index>(k)) = beam.weights;
            book.beams.push_back(std::move(beam.descriptor));
        };

        if (std::holds_alternative<strategy::TradAll>(strategy))
        {
            for (std::size_t k = 0; k < users.size(); ++k)
                place(k, traditional_focus(scenario.array, scenario.carrier, users[k]));
        }
        else if (const auto *geo = std::get_if<strategy::AiryGeo>(&strategy))
        {
            for (std::size_t k = 0; k < users.size(); ++k)
                place(k, airy_weights(scenario.array, scenario.carrier,
                                      geometric_airy(users[k], geo->bending, geo->focal)));
        }
        else
        {
            const auto &mixed = std::get<strategy::Mixed>(strategy);
            if (!scenario.obstacle)
                throw ConfigError("Mixed codebook needs an obstacle to tell shadowed from bright users.");
            bool any_shadowed = false;
            for (std::size_t k = 0; k < users.size(); ++k)
            {
                if (classify_user(users[k], *scenario.obstacle, scenario.array) == Illumination::shadowed)
                {
                    any_shadowed = true;
                    place(k, airy_weights(scenario.array, scenario.carrier,
                                          geometric_airy(users[k], mixed.bending, mixed.focal, mixed.angle_offset)));
                }
                else
                {
                    place(k, traditional_focus(scenario.array, scenario.carrier, users[k]));
                }
            }
            if (!any_shadowed)
                throw ConfigError("Mixed codebook needs at least one shadowed user.");
        }
        return book;
    }
}
