#include "airybeam/errors.hpp"
#include "airybeam/experiments.hpp"
#include "airybeam/presets.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace airybeam;

namespace
{
    const SweepResult &baseline_scan()
    {
        static const SweepResult r = run_baseline_scan(presets::baseline(), {});
        return r;
    }

    const SweepResult &shadow_scan()
    {
        static const SweepResult r = run_shadow_scan(presets::shadow(), {});
        return r;
    }

    std::size_t index_of(const SweepResult &r, double value)
    {
        for (std::size_t i = 0; i < r.points.size(); ++i)
            if (std::abs(r.points[i].value - value) < 1e-9)
                return i;
        FAIL("sweep value missing");
        return 0;
    }
}

TEST_SUITE("experiments")
{
    TEST_CASE("sweep values")
    {
        const auto v = sweep_values(-15.0, 10.0, 0.5);
        CHECK(v.size() == 51);
        CHECK(v.front() == -15.0);
        CHECK(v.back() == 10.0);
        CHECK(v[18] == -6.0);
        CHECK(sweep_values(-5.0, 5.0, 0.1).size() == 101);
        CHECK(sweep_values(-5.0, 5.0, 0.1)[21] == -2.9);
        CHECK_THROWS_AS(sweep_values(0.0, 1.0, 0.0), ArgumentError);
        CHECK_THROWS_AS(sweep_values(1.0, 0.0, 0.5), ArgumentError);
    }

    TEST_CASE("baseline scan")
    {
        const SweepResult &r = baseline_scan();
        CHECK(r.invariants.ok());
        CHECK(r.invariants.checked == 51);
        CHECK(r.strategies == std::vector<std::string>{"trad_all"});
        std::size_t peak = 0;
        for (std::size_t i = 0; i < r.points.size(); ++i)
            if (r.points[i].records[0].condition_number > r.points[peak].records[0].condition_number)
                peak = i;
        CHECK(r.points[peak].value == -6.0);
        const double kappa = r.points[peak].records[0].condition_number;
        CHECK(kappa > 158.0 / 3.0);
        CHECK(kappa < 158.0 * 3.0);
        CHECK(kappa == doctest::Approx(173.4).epsilon(5e-3));
        CHECK(r.record(index_of(r, 10.0), "trad_all").condition_number < 5.0);

        // Angular extras
        const auto &p = r.points[peak];
        CHECK(p.extras[r.extra_index("theta2_deg")] == doctest::Approx(degrees(std::atan2(-6.0, 300.0))));
        CHECK(std::abs(p.extras[r.extra_index("dtheta_deg")]) < 0.1);

        // SINR returns to its plateau away from the alignment window
        double plateau = -1e9;
        for (const auto &q : r.points)
            plateau = std::max(plateau, q.records[0].common_sinr_db);
        for (const auto &q : r.points)
            if (std::abs(q.extras[1]) > 3.0)
                CHECK(q.records[0].common_sinr_db > plateau - 1.0);
        CHECK(r.points[peak].records[0].common_sinr_db < plateau - 10.0);
        CHECK_THROWS_AS(run_baseline_scan(presets::mixed(), {}), ConfigError);
    }

    TEST_CASE("worker count does not change a sweep")
    {
        ScanSettings one;
        one.workers = 1;
        ScanSettings four;
        four.workers = 4;
        const SweepResult a = run_baseline_scan(presets::baseline(), one);
        const SweepResult b = run_baseline_scan(presets::baseline(), four);
        for (std::size_t i = 0; i < a.points.size(); ++i)
        {
            CHECK(a.points[i].records[0].sum_rate == b.points[i].records[0].sum_rate);
            CHECK(a.points[i].records[0].condition_number == b.points[i].records[0].condition_number);
        }
    }

    TEST_CASE("shadow scan")
    {
        const SweepResult &r = shadow_scan();
        CHECK(r.invariants.ok());
        CHECK(r.points.size() == 29);
        CHECK(r.strategies == std::vector<std::string>{"trad_all", "airy_geo"});
        double best_gain = -1e9;
        for (std::size_t i = 0; i < r.points.size(); ++i)
        {
            const double gain = r.record(i, "airy_geo").sum_rate - r.record(i, "trad_all").sum_rate;
            best_gain = std::max(best_gain, gain);
            CHECK(r.points[i].extras[0] == doctest::Approx(degrees(std::atan2(-5.0, 250.0))));
        }
        CHECK(best_gain > 0.0);
        // Regression pin for this discretization
        CHECK(best_gain == doctest::Approx(2.06).epsilon(0.02));

        // Deep in the shadow the traditional link is unusable
        for (const auto &p : r.points)
            if (p.value <= -6.0)
                CHECK(p.records[0].common_sinr_db < 0.0);
        CHECK_THROWS_AS(run_shadow_scan(presets::baseline(), {}), ConfigError);
    }

    TEST_CASE("mixed optimization with a coarse grid")
    {
        MixedSettings settings;
        settings.grids.bending = {-45.0, -25.0};
        settings.grids.focal = {1.5, 1.75};
        settings.grids.angle_offset = {radians(-2.0), 0.0, radians(2.0)};
        settings.sweep_step_deg = 0.5;
        const MixedResult r = run_mixed_optimization(presets::mixed(), settings);
        CHECK(r.invariants.ok());
        CHECK(r.angle_sweep.points.size() == 21);
        REQUIRE(r.comparators.points.size() == 1);
        const auto &row = r.comparators.points[0];
        CHECK(row.records.size() == 4);
        CHECK(row.records[2].sum_rate == doctest::Approx(r.outcome.best_rate));
        CHECK(row.records[1].sum_rate == doctest::Approx(r.outcome.baseline_rate));
        // The optimum is at least as good as the geometric baseline it starts from
        CHECK(row.records[2].sum_rate >= row.records[1].sum_rate);

        // Field cut sanity: normalized to the joint maximum
        CHECK(r.cut.depth == presets::mixed().users[1].z);
        const double top = std::max(*std::max_element(r.cut.geo_db.begin(), r.cut.geo_db.end()),
                                    *std::max_element(r.cut.opt_db.begin(), r.cut.opt_db.end()));
        CHECK(top == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(r.cut.geo_at_target <= 0.0);
        CHECK(r.cut.target_gain_db() == doctest::Approx(r.cut.opt_at_target - r.cut.geo_at_target));
    }

    TEST_CASE("robustness sweep")
    {
        const ScenarioConfig s = presets::mixed();
        const RobustnessResult r = run_robustness_sweep(s, {});
        CHECK(r.sweep.invariants.ok());
        CHECK(r.sweep.points.size() == 25);
        CHECK(r.magnitudes.size() == 13);

        // Zero error reproduces the nominal evaluation
        const std::size_t zero = index_of(r.sweep, 0.0);
        const Codebook trad = build_codebook(s, strategy::TradAll{});
        const MetricsRecord nominal = evaluate_link(effective_channel_diffraction(s, trad.weights), trad.weights, s);
        CHECK(r.sweep.points[zero].records[0].sum_rate == nominal.sum_rate);
        CHECK(r.sweep.points[zero].records[0].condition_number == nominal.condition_number);
        CHECK(r.sweep.points[zero].extras[0] == doctest::Approx(3.5));

        for (std::size_t j = 0; j < 3; ++j)
        {
            CHECK(r.worst_rate[j][0] == r.sweep.points[zero].records[j].sum_rate);
            CHECK(std::is_sorted(r.worst_rate[j].rbegin(), r.worst_rate[j].rend()));
        }
        for (double g : r.gain_vs_trad[0])
            CHECK(g == 0.0);
    }

    TEST_CASE("field map")
    {
        FieldMapSettings settings;
        settings.depth_first = 50.0;
        settings.depth_last = 300.0;
        settings.depth_step = 50.0;
        const IntensityMap map = run_fieldmap(presets::mixed(), settings);
        CHECK(map.depths.size() == 6);
        CHECK(map.x.size() == 4096);
        CHECK(map.at(map.peak_row, map.peak_column) == 0.0);

        settings.strategy = MapStrategy::mixed;
        settings.beam = 1;
        CHECK_NOTHROW(run_fieldmap(presets::mixed(), settings));
        settings.beam = 3;
        CHECK_THROWS_AS(run_fieldmap(presets::mixed(), settings), ArgumentError);
    }

    TEST_CASE("invariant report flags violations")
    {
        MetricsRecord m;
        m.alpha_power = 1.0;
        m.transmit_power = 1.0;
        m.equalized = true;
        m.common_sinr_db = 30.0;
        m.user_sinr_db = {30.0, 30.0};
        m.sum_rate = 2.0 * std::log2(1001.0);
        InvariantReport report;
        report.check(m, 1.0, 1e-3, "ok");
        CHECK(report.ok());
        m.transmit_power = 1.1;
        m.user_sinr_db[1] = 29.0;
        report.check(m, 1.0, 1e-3, "bad");
        CHECK_FALSE(report.ok());
        CHECK(report.failures.size() == 2);
        CHECK(report.checked == 2);
    }
}
