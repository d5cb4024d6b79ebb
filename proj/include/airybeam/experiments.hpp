// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "airybeam/optimizer.hpp"
#include "airybeam/precoding.hpp"
#include "airybeam/propagation.hpp"

#include <string>
#include <vector>

namespace airybeam
{
    // Inline checks run on every evaluated record
    struct InvariantReport
    {
        std::size_t checked = 0;
        std::vector<std::string> failures;

        bool ok() const noexcept { return failures.empty(); }
        void check(const MetricsRecord &record, double tx_power, double noise_power, const std::string &where);
        void merge(const InvariantReport &other);
    };

    struct SweepPoint
    {
        double value = 0.0;
        std::vector<MetricsRecord> records; // one per strategy
        std::vector<double> extras;         // aligned with SweepResult::extra_columns
    };

    struct SweepResult
    {
        std::string variable; // e.g. "x2_lambda"
        std::vector<std::string> strategies;
        std::vector<std::string> extra_columns;
        std::vector<SweepPoint> points; // ascending in value
        std::string scenario_hash;
        InvariantReport invariants;

        const MetricsRecord &record(std::size_t point, const std::string &strategy) const;
        std::size_t strategy_index(const std::string &strategy) const;
        std::size_t extra_index(const std::string &column) const;
    };

    // Inclusive [first, last] with the given step, robust to accumulated rounding
    std::vector<double> sweep_values(double first, double last, double step);

    struct ScanSettings
    {
        double first = -15.0; // lambda
        double last = 10.0;
        double step = 0.5;
        std::size_t workers = 0;
    };

    // Free-space lateral scan of the second user with traditional beams and the calibrated Green's channel.
    // Extras: theta2_deg, dtheta_deg (theta2 - theta1).
    SweepResult run_baseline_scan(const ScenarioConfig &scenario, const ScanSettings &settings);

    struct ShadowSettings
    {
        double first = -15.0;
        double last = -1.0;
        double step = 0.5;
        double bending = -25.0;
        double focal = 1.75;
        std::size_t workers = 0;
    };

    // Both users behind the edge; trad_all vs airy_geo over the diffraction channel.
    // Extras: theta1_deg, theta2_deg (steering angles of the geometric codebook).
    SweepResult run_shadow_scan(const ScenarioConfig &scenario, const ShadowSettings &settings);

    struct MixedSettings
    {
        SearchGrids grids = SearchGrids::defaults();
        SearchSettings search;
        double sweep_first_deg = -5.0;
        double sweep_last_deg = 5.0;
        double sweep_step_deg = 0.1;
        // Published operating point kept as an extra comparator
        double reference_bending = -44.0;
        double reference_focal = 1.50;
        double reference_offset_deg = -2.9;
    };

    struct FieldCut
    {
        double depth = 0.0;
        std::vector<double> x;
        std::vector<double> geo_db; // normalized to the joint maximum of both beams
        std::vector<double> opt_db;
        double geo_at_target = 0.0, opt_at_target = 0.0; // at the shadowed user's x
        double geo_at_fixed = 0.0, opt_at_fixed = 0.0;   // at the bright user's x
        double target_gain_db() const noexcept { return opt_at_target - geo_at_target; }
        double fixed_change_db() const noexcept { return opt_at_fixed - geo_at_fixed; }
    };

    struct MixedResult
    {
        SearchOutcome outcome;
        SweepResult angle_sweep; // at the optimal (B, F); strategy "airy_opt"; extras: h11_db
        SweepResult comparators; // single point; trad_all, airy_geo, airy_opt, airy_reference
        FieldCut cut;
        std::vector<AiryParams> comparator_params; // airy_geo, airy_opt, airy_reference
        InvariantReport invariants;
        double seconds = 0.0;
    };

    MixedResult run_mixed_optimization(const ScenarioConfig &scenario, const MixedSettings &settings);

    struct RobustnessSettings
    {
        double first = -3.0; // lambda
        double last = 3.0;
        double step = 0.25;
        double geo_bending = -25.0, geo_focal = 1.75;
        double opt_bending = -44.0, opt_focal = 1.50, opt_offset_deg = -2.9;
        std::size_t workers = 0;
    };

    struct RobustnessResult
    {
        SweepResult sweep; // trad_all, airy_geo, airy_opt; extras: x2_true_lambda
        // Per |dx| >= 0: worst rate over {-dx, +dx} for each strategy and the gains over trad_all
        std::vector<double> magnitudes;
        std::vector<std::vector<double>> worst_rate;    // [strategy][magnitude]
        std::vector<std::vector<double>> gain_vs_trad;  // [strategy][point], rate - trad rate
    };

    // Beams designed for the nominal positions; the bright user's true position is displaced by dx
    RobustnessResult run_robustness_sweep(const ScenarioConfig &scenario, const RobustnessSettings &settings);

    enum class MapStrategy
    {
        trad_all,
        airy_geo,
        mixed
    };

    struct FieldMapSettings
    {
        MapStrategy strategy = MapStrategy::trad_all;
        double depth_first = 5.0; // lambda
        double depth_last = 400.0;
        double depth_step = 5.0;
        int beam = 0;             // 0 = coherent sum of all columns, else 1-based column
        double bending = -25.0, focal = 1.75, offset_deg = 0.0;
    };

    IntensityMap run_fieldmap(const ScenarioConfig &scenario, const FieldMapSettings &settings);
}
