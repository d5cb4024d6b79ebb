// SPDX-License-Identifier: Apache-2.0
//
// airysim: command line front end for the sweeps, the Airy search and the self-checks.
// Every subcommand writes CSVs plus a `.meta.ini` sidecar into --out and exits 0 only when the inline
// invariants held (1 = invariant failure, 2 = bad input).
#include "airybeam/config.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/experiments.hpp"
#include "airybeam/io.hpp"
#include "airybeam/parallel.hpp"
#include "airybeam/presets.hpp"
#include "airybeam/validation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace airybeam;

namespace
{
    struct CommonOptions
    {
        std::string config;
        std::string out = "results";
        std::size_t workers = 0;
        std::optional<double> step;
        std::optional<std::size_t> nx;
    };

    void add_common(CLI::App *app, CommonOptions &opts, const std::string &step_help)
    {
        app->add_option("--config", opts.config, "Scenario file (defaults to the built-in scenario)")
            ->check(CLI::ExistingFile);
        app->add_option("--out", opts.out, "Output directory")->capture_default_str();
        app->add_option("--workers", opts.workers, "Worker threads (0 = all cores)")->capture_default_str();
        app->add_option("--step", opts.step, step_help)->check(CLI::PositiveNumber);
        app->add_option("--nx", opts.nx, "Override the transverse grid size (power of two)");
    }

    ScenarioConfig load(const CommonOptions &opts, const std::string &preset)
    {
        ScenarioConfig s = opts.config.empty() ? presets::by_name(preset) : load_config(opts.config);
        if (opts.nx)
        {
            s.grid = GridSpec(*opts.nx, s.grid.window_width(), s.grid.apodization_width());
            s.validate();
        }
        for (const auto &w : s.warnings())
            std::cerr << "warning: " << w << '\n';
        return s;
    }

    fs::path prepare(const CommonOptions &opts)
    {
        fs::path dir(opts.out);
        fs::create_directories(dir);
        return dir;
    }

    int finish(const InvariantReport &report, const std::string &what)
    {
        std::cout << what << ": " << report.checked << " records checked, " << report.failures.size()
                  << " invariant failures\n";
        for (const auto &f : report.failures)
            std::cerr << "  " << f << '\n';
        return report.ok() ? 0 : 1;
    }

    void add_timing(TextDocument &doc, double seconds, std::size_t workers)
    {
        doc.add("timing").set("wall_seconds", seconds).set("workers", workers == 0 ? default_workers() : workers);
    }

    double elapsed(std::chrono::steady_clock::time_point start)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    int cmd_baseline(const CommonOptions &opts, const ScanSettings &base)
    {
        const auto start = std::chrono::steady_clock::now();
        const ScenarioConfig s = load(opts, "baseline");
        ScanSettings settings = base;
        settings.workers = opts.workers;
        if (opts.step)
            settings.step = *opts.step;
        const auto result = run_baseline_scan(s, settings);
        const fs::path dir = prepare(opts);
        io::write_metrics_csv(dir / "baseline.csv", result);
        const Codebook book = build_codebook(s, strategy::TradAll{});
        io::write_codebook_csv(dir / "baseline_codebook.csv", s, book);
        const ModelFit fit = calibrate_models(s);
        io::write_channel_csv(dir / "baseline_channel.csv", calibrated_greens_effective(s, book.weights, fit));

        auto doc = io::sidecar("baseline", s);
        doc.add("sweep")
            .set("variable", result.variable)
            .set("first", settings.first)
            .set("last", settings.last)
            .set("step", settings.step)
            .set("points", result.points.size());
        doc.add("calibration")
            .set("scale_abs", std::abs(fit.scale))
            .set("scale_arg_rad", std::arg(fit.scale))
            .set("residual", fit.residual)
            .set("applied_to", "greens_free_space");
        doc.add("channel").set("model", to_string(ChannelModel::greens_free_space)).set("kind", "effective");
        io::add_invariants(doc, result.invariants);
        add_timing(doc, elapsed(start), opts.workers);
        doc.write(dir / "baseline.meta.ini");
        return finish(result.invariants, "baseline");
    }

    int cmd_shadow(const CommonOptions &opts, const ShadowSettings &base)
    {
        const auto start = std::chrono::steady_clock::now();
        const ScenarioConfig s = load(opts, "shadow");
        ShadowSettings settings = base;
        settings.workers = opts.workers;
        if (opts.step)
            settings.step = *opts.step;
        const auto result = run_shadow_scan(s, settings);
        const fs::path dir = prepare(opts);
        io::write_metrics_csv(dir / "shadow.csv", result);
        io::write_codebook_csv(dir / "shadow_codebook.csv", s,
                               build_codebook(s, strategy::AiryGeo{settings.bending, settings.focal}));

        auto doc = io::sidecar("shadow", s);
        doc.add("sweep")
            .set("variable", result.variable)
            .set("first", settings.first)
            .set("last", settings.last)
            .set("step", settings.step)
            .set("points", result.points.size())
            .set("airy_bending", settings.bending)
            .set("airy_focal_m", settings.focal);
        io::add_invariants(doc, result.invariants);
        add_timing(doc, elapsed(start), opts.workers);
        doc.write(dir / "shadow.meta.ini");
        return finish(result.invariants, "shadow");
    }

    int cmd_mixed(const CommonOptions &opts, MixedSettings settings)
    {
        const ScenarioConfig s = load(opts, "mixed");
        settings.search.workers = opts.workers;
        if (opts.step)
            settings.sweep_step_deg = *opts.step;
        const auto result = run_mixed_optimization(s, settings);
        const fs::path dir = prepare(opts);
        io::write_trace_csv(dir / "mixed_trace.csv", result.outcome);
        io::write_metrics_csv(dir / "mixed_dtheta.csv", result.angle_sweep);
        io::write_metrics_csv(dir / "mixed_comparators.csv", result.comparators);
        io::write_fieldcut_csv(dir / "mixed_fieldcut.csv", result.cut, s.carrier.wavelength());
        const auto &p = result.outcome.best_params;
        io::write_codebook_csv(dir / "mixed_codebook.csv", s,
                               build_codebook(s, strategy::Mixed{p.bending, p.focal, result.outcome.best_angle_offset}));

        auto doc = io::sidecar("mixed-opt", s);
        io::add_outcome(doc, result.outcome, s.grid.num_samples());
        doc.sections.back()
            .set("eta", settings.search.eta)
            .set("coarse_grid_points", settings.grids.coarse_size())
            .set("fine_grid_points", settings.grids.fine_size());
        const auto &cut = result.cut;
        doc.add("field_cut")
            .set("depth_m", cut.depth)
            .set("normalization", "joint maximum of airy_geo and airy_opt")
            .set("geo_at_target_db", cut.geo_at_target)
            .set("opt_at_target_db", cut.opt_at_target)
            .set("geo_at_fixed_db", cut.geo_at_fixed)
            .set("opt_at_fixed_db", cut.opt_at_fixed)
            .set("target_gain_db", cut.target_gain_db())
            .set("fixed_change_db", cut.fixed_change_db());
        io::add_invariants(doc, result.invariants);
        add_timing(doc, result.seconds, opts.workers);
        doc.write(dir / "mixed.meta.ini");

        std::cout << "best B = " << p.bending << ", F = " << p.focal << " m, dtheta = "
                  << degrees(result.outcome.best_angle_offset) << " deg, rate = " << result.outcome.best_rate
                  << " bit/s/Hz (" << result.outcome.evaluations << " evaluations)\n";
        return finish(result.invariants, "mixed-opt");
    }

    int cmd_robustness(const CommonOptions &opts, const RobustnessSettings &base)
    {
        const auto start = std::chrono::steady_clock::now();
        const ScenarioConfig s = load(opts, "mixed");
        RobustnessSettings settings = base;
        settings.workers = opts.workers;
        if (opts.step)
            settings.step = *opts.step;
        const auto result = run_robustness_sweep(s, settings);
        const fs::path dir = prepare(opts);
        io::write_metrics_csv(dir / "robustness.csv", result.sweep);
        io::write_robustness_summary_csv(dir / "robustness_summary.csv", result);

        auto doc = io::sidecar("robustness", s);
        doc.add("sweep")
            .set("variable", result.sweep.variable)
            .set("first", settings.first)
            .set("last", settings.last)
            .set("step", settings.step)
            .set("opt_bending", settings.opt_bending)
            .set("opt_focal_m", settings.opt_focal)
            .set("opt_dtheta_deg", settings.opt_offset_deg);
        io::add_invariants(doc, result.sweep.invariants);
        add_timing(doc, elapsed(start), opts.workers);
        doc.write(dir / "robustness.meta.ini");
        return finish(result.sweep.invariants, "robustness");
    }

    int cmd_fieldmap(const CommonOptions &opts, FieldMapSettings settings, const std::string &strategy,
                     const std::string &scenario_name)
    {
        const ScenarioConfig s = load(opts, scenario_name);
        if (strategy == "trad")
            settings.strategy = MapStrategy::trad_all;
        else if (strategy == "geo")
            settings.strategy = MapStrategy::airy_geo;
        else
            settings.strategy = MapStrategy::mixed;
        if (opts.step)
            settings.depth_step = *opts.step;
        const auto map = run_fieldmap(s, settings);
        const fs::path dir = prepare(opts);
        const std::string stem = "fieldmap_" + scenario_name + "_" + strategy;
        io::write_intensity_csv(dir / (stem + ".csv"), map);

        auto doc = io::sidecar("fieldmap", s);
        io::add_grid(doc, s.grid, s.carrier.wavelength());
        auto &depths = doc.add("depths");
        depths.set("count", map.depths.size())
            .set("first_lambda", settings.depth_first)
            .set("last_lambda", map.depths.back() / s.carrier.wavelength())
            .set("step_lambda", settings.depth_step);
        doc.add("normalization")
            .set("peak_intensity", map.peak_intensity)
            .set("peak_depth_m", map.depths[map.peak_row])
            .set("peak_x_m", map.x[map.peak_column])
            .set("floor_db", kIntensityFloorDb);
        doc.add("beam")
            .set("strategy", strategy)
            .set("column", settings.beam == 0 ? std::string("sum") : std::to_string(settings.beam))
            .set("bending", settings.bending)
            .set("focal_m", settings.focal)
            .set("dtheta_deg", settings.offset_deg);
        doc.write(dir / (stem + ".meta.ini"));
        std::cout << "fieldmap: " << map.depths.size() << " x " << map.x.size() << " samples\n";
        return 0;
    }

    int cmd_validate(const CommonOptions &opts, ValidationOptions vo)
    {
        const ScenarioConfig s = load(opts, "mixed");
        const auto checks = run_validation(s, vo);
        const fs::path dir = prepare(opts);
        {
            std::ofstream csv(dir / "validate.csv", std::ios::binary);
            csv << "check,value,threshold,passed,gating\n";
            for (const auto &c : checks)
                csv << c.name << ',' << format_number(c.value) << ',' << format_number(c.threshold) << ','
                    << (c.passed ? 1 : 0) << ',' << (c.gating ? 1 : 0) << '\n';
        }
        bool ok = true;
        for (const auto &c : checks)
        {
            const char *status = c.passed ? "PASS" : (c.gating ? "FAIL" : "INFO");
            std::cout << status << "  " << c.name << "  " << c.value << " (limit " << c.threshold << ")";
            if (!c.detail.empty())
                std::cout << "  " << c.detail;
            std::cout << '\n';
            ok = ok && (c.passed || !c.gating);
        }
        auto doc = io::sidecar("validate", s);
        doc.add("validation").set("checks", checks.size()).set("passed", ok).set("seed", static_cast<long long>(vo.seed));
        doc.write(dir / "validate.meta.ini");
        return ok ? 0 : 1;
    }
}

int main(int argc, char **argv)
{
    CLI::App app("Near-field multi-user beamforming simulator with knife-edge blockage");
    app.require_subcommand(1);

    CommonOptions common;

    ScanSettings baseline;
    auto *sub = app.add_subcommand("baseline", "Free-space lateral scan of UE-2 (x2 in lambda)");
    add_common(sub, common, "Scan step in lambda");
    sub->add_option("--from", baseline.first, "First x2 [lambda]")->capture_default_str();
    sub->add_option("--to", baseline.last, "Last x2 [lambda]")->capture_default_str();

    ShadowSettings shadow;
    auto *shadow_cmd = app.add_subcommand("shadow", "Double-shadow scan, traditional vs geometric Airy codebook");
    add_common(shadow_cmd, common, "Scan step in lambda");
    shadow_cmd->add_option("--from", shadow.first, "First x2 [lambda]")->capture_default_str();
    shadow_cmd->add_option("--to", shadow.last, "Last x2 [lambda]")->capture_default_str();
    shadow_cmd->add_option("--bending", shadow.bending, "Airy bending B")->capture_default_str();
    shadow_cmd->add_option("--focal", shadow.focal, "Airy focal parameter F [m]")->capture_default_str();

    MixedSettings mixed;
    auto *mixed_cmd = app.add_subcommand("mixed-opt", "Coarse-to-fine Airy search in the shadowed/bright scenario");
    add_common(mixed_cmd, common, "Step of the delta-theta sweep in degrees");
    mixed_cmd->add_option("--eta", mixed.search.eta, "Own-link power relaxation factor")->capture_default_str();

    RobustnessSettings robust;
    auto *robust_cmd = app.add_subcommand("robustness", "Positioning-error sweep of UE-2 with frozen beams");
    add_common(robust_cmd, common, "Error step in lambda");
    robust_cmd->add_option("--range", robust.last, "Half-width of the error interval [lambda]")->capture_default_str();

    FieldMapSettings fieldmap;
    std::string map_strategy = "trad";
    std::string map_scenario = "baseline";
    auto *map_cmd = app.add_subcommand("fieldmap", "Normalized |E|^2 map over depth and x");
    add_common(map_cmd, common, "Depth step in lambda");
    map_cmd->add_option("--strategy", map_strategy, "Codebook: trad, geo or mixed")
        ->check(CLI::IsMember({"trad", "geo", "mixed"}))
        ->capture_default_str();
    map_cmd->add_option("--scenario", map_scenario, "Built-in scenario: baseline, shadow or mixed")
        ->check(CLI::IsMember({"baseline", "shadow", "mixed"}))
        ->capture_default_str();
    map_cmd->add_option("--z-min", fieldmap.depth_first, "First depth [lambda]")->capture_default_str();
    map_cmd->add_option("--z-max", fieldmap.depth_last, "Last depth [lambda]")->capture_default_str();
    map_cmd->add_option("--beam", fieldmap.beam, "Codebook column (1-based), 0 = sum of all")->capture_default_str();
    map_cmd->add_option("--bending", fieldmap.bending, "Airy bending B")->capture_default_str();
    map_cmd->add_option("--focal", fieldmap.focal, "Airy focal parameter F [m]")->capture_default_str();
    map_cmd->add_option("--dtheta", fieldmap.offset_deg, "Airy angle offset [deg] (mixed)")->capture_default_str();

    ValidationOptions validation;
    auto *validate_cmd = app.add_subcommand("validate", "Propagator, oracle and precoder self-checks");
    add_common(validate_cmd, common, "Unused");
    validate_cmd->add_option("--cases", validation.cases, "Random cases per property")->capture_default_str();
    validate_cmd->add_option("--seed", validation.seed, "Random seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sub)
            return cmd_baseline(common, baseline);
        if (*shadow_cmd)
            return cmd_shadow(common, shadow);
        if (*mixed_cmd)
            return cmd_mixed(common, mixed);
        if (*robust_cmd)
        {
            robust.first = -robust.last;
            return cmd_robustness(common, robust);
        }
        if (*map_cmd)
        {
            if (map_strategy == "mixed" && map_cmd->count("--bending") == 0)
            {
                fieldmap.bending = -44.0;
                fieldmap.focal = map_cmd->count("--focal") ? fieldmap.focal : 1.50;
                fieldmap.offset_deg = map_cmd->count("--dtheta") ? fieldmap.offset_deg : -2.9;
            }
            return cmd_fieldmap(common, fieldmap, map_strategy, map_scenario);
        }
        if (*validate_cmd)
            return cmd_validate(common, validation);
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
