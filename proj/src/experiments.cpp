// SPDX-License-Identifier: Apache-2.0
#include "airybeam/experiments.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace airybeam
{
    namespace
    {
        constexpr double kPowerTolerance = 1e-9;
        constexpr double kEqualSinrToleranceDb = 0.05;

        std::string label(const std::string &variable, double value, const std::string &strategy)
        {
            return variable + " = " + std::to_string(value) + " [" + strategy + "]";
        }

        void check_users(const ScenarioConfig &scenario, std::size_t count)
        {
            if (scenario.users.size() != count)
                throw ConfigError("This experiment expects " + std::to_string(count) + " users, the config has " +
                                  std::to_string(scenario.users.size()) + ".");
        }

        ScenarioConfig move_user(const ScenarioConfig &scenario, std::size_t index, double x)
        {
            auto users = scenario.users;
            users[index].x = x;
            return scenario.with_users(std::move(users));
        }
    }

    void InvariantReport::check(const MetricsRecord &record, double tx_power, double noise_power,
                                const std::string &where)
    {
        ++checked;
        if (!(std::abs(record.transmit_power - tx_power) <= kPowerTolerance * tx_power))
            failures.push_back(where + ": transmit power " + std::to_string(record.transmit_power) + " != " +
                               std::to_string(tx_power));
        if (!record.equalized)
            return;
        for (const double user : record.user_sinr_db)
            if (!(std::abs(user - record.common_sinr_db) <= kEqualSinrToleranceDb))
                failures.push_back(where + ": per-user SINR " + std::to_string(user) + " dB differs from common " +
                                   std::to_string(record.common_sinr_db) + " dB");
        const double k = static_cast<double>(record.user_sinr_db.size());
        const double expected = k * std::log2(1.0 + record.alpha_power / noise_power);
        if (!(std::abs(record.sum_rate - expected) <= 1e-9 * std::max(1.0, expected)))
            failures.push_back(where + ": sum rate deviates from K log2(1 + alpha^2 / sigma^2)");
    }

    void InvariantReport::merge(const InvariantReport &other)
    {
        checked += other.checked;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }

    const MetricsRecord &SweepResult::record(std::size_t point, const std::string &strategy) const
    {
        return points.at(point).records.at(strategy_index(strategy));
    }

    std::size_t SweepResult::strategy_index(const std::string &strategy) const
    {
        const auto it = std::find(strategies.begin(), strategies.end(), strategy);
        if (it == strategies.end())
            throw ArgumentError("Unknown strategy '" + strategy + "'.");
        return static_cast<std::size_t>(it - strategies.begin());
    }

    std::size_t SweepResult::extra_index(const std::string &column) const
    {
        const auto it = std::find(extra_columns.begin(), extra_columns.end(), column);
        if (it == extra_columns.end())
            throw ArgumentError("Unknown column '" + column + "'.");
        return static_cast<std::size_t>(it - extra_columns.begin());
    }

    std::vector<double> sweep_values(double first, double last, double step)
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw ArgumentError("Sweep step must be positive.");
        if (!(last >= first))
            throw ArgumentError("Sweep range is empty.");
        const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9));
        std::vector<double> values;
        for (long i = 0; i <= count; ++i)
        {
            // Snap to a 1e-9 lattice so values like -6.0 print and compare exactly
            const double v = first + static_cast<double>(i) * step;
            values.push_back(std::round(v * 1e9) / 1e9);
        }
        return values;
    }

    SweepResult run_baseline_scan(const ScenarioConfig &scenario, const ScanSettings &settings)
    {
        check_users(scenario, 2);
        if (scenario.obstacle)
            throw ConfigError("The baseline scan runs in free space; remove the [obstacle] section.");

        const double lambda = scenario.carrier.wavelength();
        const ModelFit fit = calibrate_models(scenario);
        const double theta1 = geometric_angle(scenario.users[0]);

        SweepResult result;
        result.variable = "x2_lambda";
        result.strategies = {"trad_all"};
        result.extra_columns = {"theta2_deg", "dtheta_deg"};
        result.scenario_hash = scenario.hash();

        const auto values = sweep_values(settings.first, settings.last, settings.step);
        result.points.resize(values.size());
        parallel_for(values.size(), settings.workers, [&](std::size_t i) {
            const ScenarioConfig s = move_user(scenario, 1, values[i] * lambda);
            const Codebook book = build_codebook(s, strategy::TradAll{});
            const ChannelMatrix h = calibrated_greens_effective(s, book.weights, fit);
            SweepPoint &p = result.points[i];
            p.value = values[i];
            p.records = {evaluate_link(h, book.weights, s)};
            const double theta2 = geometric_angle(s.users[1]);
            p.extras = {degrees(theta2), degrees(theta2 - theta1)};
        });

        for (const auto &p : result.points)
            result.invariants.check(p.records[0], scenario.tx_power, scenario.noise_power,
                                    label(result.variable, p.value, "trad_all"));
        return result;
    }

    SweepResult run_shadow_scan(const ScenarioConfig &scenario, const ShadowSettings &settings)
    {
        check_users(scenario, 2);
        if (!scenario.obstacle)
            throw ConfigError("The shadow scan needs an [obstacle] section.");

        const double lambda = scenario.carrier.wavelength();
        SweepResult result;
        result.variable = "x2_lambda";
        result.strategies = {"trad_all", "airy_geo"};
        result.extra_columns = {"theta1_deg", "theta2_deg"};
        result.scenario_hash = scenario.hash();

        const auto values = sweep_values(settings.first, settings.last, settings.step);
        result.points.resize(values.size());
        const CodebookStrategy trad = strategy::TradAll{};
        const CodebookStrategy geo = strategy::AiryGeo{settings.bending, settings.focal};
        parallel_for(values.size(), settings.workers, [&](std::size_t i) {
            const ScenarioConfig s = move_user(scenario, 1, values[i] * lambda);
            SweepPoint &p = result.points[i];
            p.value = values[i];
            for (const auto &strategy : {trad, geo})
            {
                const Codebook book = build_codebook(s, strategy);
                p.records.push_back(evaluate_link(effective_channel_diffraction(s, book.weights), book.weights, s));
            }
            p.extras = {degrees(geometric_angle(s.users[0])), degrees(geometric_angle(s.users[1]))};
        });

        for (const auto &p : result.points)
            for (std::size_t j = 0; j < result.strategies.size(); ++j)
                result.invariants.check(p.records[j], scenario.tx_power, scenario.noise_power,
                                        label(result.variable, p.value, result.strategies[j]));
        return result;
    }

    MixedResult run_mixed_optimization(const ScenarioConfig &scenario, const MixedSettings &settings)
    {
        const auto start = std::chrono::steady_clock::now();
        const MixedProblem problem(scenario);
        MixedResult result;
        result.outcome = coarse_to_fine_search(problem, settings.grids, settings.search);
        const SearchOutcome &best = result.outcome;

        // Angle sweep at the optimal (B, F)
        SweepResult &sweep = result.angle_sweep;
        sweep.variable = "dtheta_deg";
        sweep.strategies = {"airy_opt"};
        sweep.extra_columns = {"h11_db"};
        sweep.scenario_hash = scenario.hash();
        const auto offsets = sweep_values(settings.sweep_first_deg, settings.sweep_last_deg, settings.sweep_step_deg);
        sweep.points.resize(offsets.size());
        parallel_for(offsets.size(), settings.search.workers, [&](std::size_t i) {
            const auto r = evaluate_candidate(
                problem, problem.params(best.best_params.bending, best.best_params.focal, radians(offsets[i])));
            sweep.points[i] = {offsets[i], {r.metrics}, {to_db(r.h11_power)}};
        });
        for (const auto &p : sweep.points)
            sweep.invariants.check(p.records[0], scenario.tx_power, scenario.noise_power,
                                   label(sweep.variable, p.value, "airy_opt"));

        // Comparators at the nominal geometry
        const AiryParams geo = problem.params(settings.search.geo_bending, settings.search.geo_focal, 0.0);
        const AiryParams reference = problem.params(settings.reference_bending, settings.reference_focal,
                                                    radians(settings.reference_offset_deg));
        result.comparator_params = {geo, best.best_params, reference};

        SweepResult &table = result.comparators;
        table.variable = "point";
        table.strategies = {"trad_all", "airy_geo", "airy_opt", "airy_reference"};
        table.extra_columns = {"opt_bending", "opt_focal_m", "opt_dtheta_deg"};
        table.scenario_hash = scenario.hash();
        SweepPoint point;
        point.value = 0.0;
        {
            const Codebook book = build_codebook(scenario, strategy::TradAll{});
            point.records.push_back(evaluate_link(effective_channel_diffraction(scenario, book.weights), book.weights,
                                                  scenario));
        }
        for (const auto &params : result.comparator_params)
            point.records.push_back(evaluate_candidate(problem, params).metrics);
        point.extras = {best.best_params.bending, best.best_params.focal, degrees(best.best_angle_offset)};
        table.points.push_back(std::move(point));
        for (std::size_t j = 0; j < table.strategies.size(); ++j)
            table.invariants.check(table.points[0].records[j], scenario.tx_power, scenario.noise_power,
                                   label("comparator", 0.0, table.strategies[j]));

        // Transverse cuts of the shadowed user's beam at the bright user's depth
        FieldCut &cut = result.cut;
        const UserPosition &target = scenario.users[problem.target()];
        const UserPosition &fixed = scenario.users[problem.fixed()];
        cut.depth = fixed.z;
        std::vector<double> intensity[2];
        for (int m = 0; m < 2; ++m)
        {
            const AiryParams &params = m == 0 ? geo : best.best_params;
            const auto w = airy_weights(scenario.array, scenario.carrier, params).weights;
            const auto aperture = embed_aperture(std::span<const cplx>(w.data(), static_cast<std::size_t>(w.size())),
                                                 scenario.array, scenario.grid, scenario.carrier);
            const auto field = propagate_blocked(aperture, scenario.obstacle, cut.depth);
            for (const auto &sample : field.samples)
                intensity[m].push_back(std::norm(sample));
        }
        const double joint = std::max(*std::max_element(intensity[0].begin(), intensity[0].end()),
                                      *std::max_element(intensity[1].begin(), intensity[1].end()));
        if (!(joint > 0.0))
            throw NumericalError("Field cut is identically zero.");
        const GridSpec &grid = scenario.grid;
        for (std::size_t c = 0; c < grid.num_samples(); ++c)
        {
            if (std::abs(grid.x(c)) > grid.interior_half_width())
                continue;
            cut.x.push_back(grid.x(c));
            cut.geo_db.push_back(std::max(to_db(intensity[0][c] / joint), kIntensityFloorDb));
            cut.opt_db.push_back(std::max(to_db(intensity[1][c] / joint), kIntensityFloorDb));
        }
        auto level = [&](int m, double x) {
            const ComplexField power(std::vector<cplx>(intensity[m].begin(), intensity[m].end()), grid, cut.depth,
                                     scenario.carrier.wavelength());
            return to_db(sample_field(power, x).real() / joint);
        };
        cut.geo_at_target = level(0, target.x);
        cut.opt_at_target = level(1, target.x);
        cut.geo_at_fixed = level(0, fixed.x);
        cut.opt_at_fixed = level(1, fixed.x);

        result.invariants.merge(sweep.invariants);
        result.invariants.merge(table.invariants);
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

    RobustnessResult run_robustness_sweep(const ScenarioConfig &scenario, const RobustnessSettings &settings)
    {
        const MixedProblem problem(scenario);
        const double lambda = scenario.carrier.wavelength();
        const std::size_t fixed = problem.fixed();

        // Beams frozen at the nominal positions
        Eigen::MatrixXcd books[3];
        books[0] = build_codebook(scenario, strategy::TradAll{}).weights;
        books[1] = build_codebook(scenario, strategy::AiryGeo{settings.geo_bending, settings.geo_focal}).weights;
        books[2] = books[0];
        books[2].col(static_cast<Eigen::Index>(problem.target())) =
            airy_weights(scenario.array, scenario.carrier,
                         problem.params(settings.opt_bending, settings.opt_focal, radians(settings.opt_offset_deg)))
                .weights;

        RobustnessResult result;
        SweepResult &sweep = result.sweep;
        sweep.variable = "dx2_lambda";
        sweep.strategies = {"trad_all", "airy_geo", "airy_opt"};
        sweep.extra_columns = {"x2_true_lambda"};
        sweep.scenario_hash = scenario.hash();

        const auto values = sweep_values(settings.first, settings.last, settings.step);
        sweep.points.resize(values.size());
        const double nominal = scenario.users[fixed].x;
        parallel_for(values.size(), settings.workers, [&](std::size_t i) {
            const ScenarioConfig truth = move_user(scenario, fixed, nominal + values[i] * lambda);
            SweepPoint &p = sweep.points[i];
            p.value = values[i];
            for (const auto &book : books)
                p.records.push_back(evaluate_link(effective_channel_diffraction(truth, book), book, truth));
            p.extras = {truth.users[fixed].x / lambda};
        });
        for (const auto &p : sweep.points)
            for (std::size_t j = 0; j < sweep.strategies.size(); ++j)
                sweep.invariants.check(p.records[j], scenario.tx_power, scenario.noise_power,
                                       label(sweep.variable, p.value, sweep.strategies[j]));

        const std::size_t strategies = sweep.strategies.size();
        result.gain_vs_trad.assign(strategies, {});
        for (std::size_t j = 0; j < strategies; ++j)
            for (const auto &p : sweep.points)
                result.gain_vs_trad[j].push_back(p.records[j].sum_rate - p.records[0].sum_rate);

        // Worst case over the symmetric error interval [-|dx|, +|dx|]
        for (const auto &p : sweep.points)
            if (p.value >= 0.0)
                result.magnitudes.push_back(p.value);
        result.worst_rate.assign(strategies, {});
        for (std::size_t j = 0; j < strategies; ++j)
        {
            for (const double m : result.magnitudes)
            {
                double worst = std::numeric_limits<double>::infinity();
                for (const auto &p : sweep.points)
                    if (std::abs(p.value) <= m + 1e-12)
                        worst = std::min(worst, p.records[j].sum_rate);
                result.worst_rate[j].push_back(worst);
            }
        }
        return result;
    }

    IntensityMap run_fieldmap(const ScenarioConfig &scenario, const FieldMapSettings &settings)
    {
        const double lambda = scenario.carrier.wavelength();
        CodebookStrategy strategy = strategy::TradAll{};
        if (settings.strategy == MapStrategy::airy_geo)
            strategy = strategy::AiryGeo{settings.bending, settings.focal};
        else if (settings.strategy == MapStrategy::mixed)
            strategy = strategy::Mixed{settings.bending, settings.focal, radians(settings.offset_deg)};
        const Codebook book = build_codebook(scenario, strategy);

        Eigen::VectorXcd w;
        if (settings.beam == 0)
            w = book.weights.rowwise().sum();
        else if (settings.beam >= 1 && settings.beam <= book.weights.cols())
            w = book.weights.col(settings.beam - 1);
        else
            throw ArgumentError("Beam index " + std::to_string(settings.beam) + " is out of range.");

        std::vector<double> depths;
        for (const double z : sweep_values(settings.depth_first, settings.depth_last, settings.depth_step))
            depths.push_back(z * lambda);
        const auto aperture = embed_aperture(std::span<const cplx>(w.data(), static_cast<std::size_t>(w.size())),
                                             scenario.array, scenario.grid, scenario.carrier);
        return intensity_map(aperture, scenario.obstacle, depths);
    }
}
