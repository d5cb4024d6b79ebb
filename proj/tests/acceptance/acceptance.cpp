// End-to-end acceptance report: one PASS/FAIL line per criterion.
//
// Every criterion is evaluated and reported. The process exits non-zero only when a criterion could not be
// evaluated at all (exception, missing CLI); the strict numerical properties are additionally gated by the
// unit suites.
#include "airybeam/airybeam.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace airybeam;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        bool passed = false;
        std::string detail;
    };

    struct Criterion
    {
        int id;
        std::string name;
        std::function<Outcome()> run;
    };

    std::string fmt(const char *format, auto... args)
    {
        char buffer[512];
        std::snprintf(buffer, sizeof buffer, format, args...);
        return buffer;
    }

    double lambda() { return kSpeedOfLight / 28e9; }

    GridSpec periodic() { return presets::baseline().grid.without_apodization(); }

    Outcome unitarity()
    {
        const GridSpec grid = periodic();
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int c = 0; c < 100; ++c)
        {
            const ComplexField f(random_band_limited(grid, 2.0 / lambda(), (5.0 + 20.0 * unit(rng)) * lambda(), rng()),
                                 grid, 0.0, lambda());
            const double z = (10.0 + 490.0 * unit(rng)) * lambda();
            const double e = propagate_angular_spectrum(f, z).energy();
            worst = std::max(worst, std::abs(e - f.energy()) / f.energy());
        }
        return {worst < 1e-10, fmt("max relative energy error %.3e over 100 fields (limit 1e-10)", worst)};
    }

    double relative_difference(const ComplexField &a, const ComplexField &b)
    {
        double diff = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < a.samples.size(); ++i)
        {
            diff += std::norm(a.samples[i] - b.samples[i]);
            ref += std::norm(b.samples[i]);
        }
        return std::sqrt(diff / ref);
    }

    Outcome semigroup()
    {
        const GridSpec grid = periodic();
        std::mt19937_64 rng(202);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int c = 0; c < 50; ++c)
        {
            const ComplexField f(random_band_limited(grid, 2.0 / lambda(), 10.0 * lambda(), rng()), grid, 0.0, lambda());
            const double z1 = (10.0 + 290.0 * unit(rng)) * lambda();
            const double z2 = (10.0 + 290.0 * unit(rng)) * lambda();
            const auto once = propagate_angular_spectrum(f, z1 + z2);
            const auto twice = propagate_angular_spectrum(propagate_angular_spectrum(f, z1), z2);
            worst = std::max(worst, relative_difference(twice, once));
        }
        return {worst < 1e-9, fmt("max relative split error %.3e over 50 cases (limit 1e-9)", worst)};
    }

    Outcome oracle()
    {
        const GridSpec grid = periodic();
        std::mt19937_64 rng(303);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = 0.0;
        for (int c = 0; c < 20; ++c)
        {
            const ComplexField f(random_band_limited(grid, 0.1 / lambda(), 10.0 * lambda(), rng()), grid, 0.0, lambda());
            const double z = (50.0 + 350.0 * unit(rng)) * lambda();
            const auto spectral = propagate_angular_spectrum(f, z);
            const auto direct = propagate_direct_fresnel(f, z);
            double diff = 0.0, peak = 0.0;
            for (std::size_t i = 0; i < grid.num_samples(); ++i)
            {
                if (std::abs(grid.x(i)) > 0.25 * grid.window_width())
                    continue;
                diff = std::max(diff, std::abs(spectral.samples[i] - direct.samples[i]));
                peak = std::max(peak, std::abs(direct.samples[i]));
            }
            worst = std::max(worst, diff / peak);
        }
        return {worst < 1e-3, fmt("max error/peak %.3e on the interior half, 20 fields, z in [50, 400] lambda (limit 1e-3)", worst)};
    }

    Outcome calibration()
    {
        const ModelFit fit = calibrate_models(presets::baseline());
        return {fit.residual < 0.02, fmt("post-calibration residual %.4f, |c| = %.4e (limit 0.02)", fit.residual,
                                         std::abs(fit.scale))};
    }

    Outcome zero_forcing()
    {
        std::mt19937_64 rng(505);
        std::normal_distribution<double> normal;
        const ScenarioConfig s = presets::baseline();
        const Eigen::MatrixXcd beams = build_codebook(s, strategy::TradAll{}).weights;
        double zf = 0.0, power = 0.0;
        for (int c = 0; c < 100; ++c)
        {
            Eigen::MatrixXcd h(2, 2);
            do
            {
                for (Eigen::Index i = 0; i < 4; ++i)
                    h(i) = cplx(normal(rng), normal(rng));
            } while (Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues()(0) >
                     100.0 * Eigen::JacobiSVD<Eigen::MatrixXcd>(h).singularValues()(1));
            const auto p = rzf_precoder({h, ChannelModel::greens_free_space, ChannelKind::effective}, beams, 1.0, 0.0);
            const Eigen::MatrixXcd target = p.alpha * Eigen::MatrixXcd::Identity(2, 2);
            zf = std::max(zf, (p.product - target).norm() / target.norm());
            power = std::max(power, std::abs(p.transmit_power - 1.0));
        }
        return {zf < 1e-8 && power < 1e-9,
                fmt("max ZF residual %.3e (limit 1e-8), max power error %.3e (limit 1e-9)", zf, power)};
    }

    Outcome gaussian()
    {
        const GridSpec grid = periodic();
        const double w0 = 4.0 * lambda();
        ComplexField f(grid, 0.0, lambda());
        for (std::size_t i = 0; i < f.samples.size(); ++i)
        {
            const double u = grid.x(i) / w0;
            f.samples[i] = std::exp(-u * u);
        }
        double worst = 0.0;
        for (double zl : {50.0, 200.0, 400.0})
        {
            const double z = zl * lambda();
            const auto g = propagate_angular_spectrum(f, z);
            double m0 = 0.0, m2 = 0.0;
            for (std::size_t i = 0; i < g.samples.size(); ++i)
            {
                m0 += std::norm(g.samples[i]);
                m2 += std::norm(g.samples[i]) * grid.x(i) * grid.x(i);
            }
            const double expected = w0 * std::sqrt(1.0 + std::pow(lambda() * z / (kPi * w0 * w0), 2));
            worst = std::max(worst, std::abs(2.0 * std::sqrt(m2 / m0) / expected - 1.0));
        }
        return {worst < 0.01, fmt("max width error %.3e at z = 50, 200, 400 lambda (limit 0.01)", worst)};
    }

    const SweepResult &baseline_scan()
    {
        static const SweepResult r = run_baseline_scan(presets::baseline(), {});
        return r;
    }

    Outcome singularity()
    {
        const SweepResult &r = baseline_scan();
        std::size_t peak = 0;
        for (std::size_t i = 0; i < r.points.size(); ++i)
            if (r.points[i].records[0].condition_number > r.points[peak].records[0].condition_number)
                peak = i;
        const double x = r.points[peak].value;
        const double kappa = r.points[peak].records[0].condition_number;
        const bool ok = std::abs(x + 6.0) <= 0.5 + 1e-9 && kappa >= 158.0 / 3.0 && kappa <= 158.0 * 3.0;
        return {ok, fmt("kappa peak %.1f at x2 = %.1f lambda (need -6 +/- 0.5, magnitude in [52.7, 474])", kappa, x)};
    }

    Outcome angular_window()
    {
        // Plateau = best SINR anywhere on the scan, i.e. the well-separated level the link recovers to
        const SweepResult &r = baseline_scan();
        const std::size_t dtheta = r.extra_index("dtheta_deg");
        double plateau = -1e300;
        for (const auto &p : r.points)
            plateau = std::max(plateau, p.records[0].common_sinr_db);
        std::size_t count = 0;
        double worst = 0.0;
        std::string where;
        for (const auto &p : r.points)
        {
            if (std::abs(p.extras[dtheta]) <= 3.0)
                continue;
            ++count;
            worst = std::max(worst, plateau - p.records[0].common_sinr_db);
            where += fmt(" %.1f", p.value);
        }
        return {count > 0 && worst < 1.0,
                fmt("%zu scan points with |dtheta| > 3 deg (x2 =%s lambda), max shortfall %.3f dB below the %.2f dB plateau (limit 1 dB)",
                    count, where.c_str(), worst, plateau)};
    }

    const SweepResult &shadow_scan()
    {
        static const SweepResult r = run_shadow_scan(presets::shadow(), {});
        return r;
    }

    Outcome shadow_resilience()
    {
        const SweepResult &r = shadow_scan();
        double geo_min = 1e9, trad_max = -1e9;
        for (std::size_t i = 0; i < r.points.size(); ++i)
        {
            geo_min = std::min(geo_min, r.record(i, "airy_geo").common_sinr_db);
            if (r.points[i].value <= -6.0 + 1e-9)
                trad_max = std::max(trad_max, r.record(i, "trad_all").common_sinr_db);
        }
        const ScenarioConfig s = presets::shadow();
        const auto trad = build_codebook(s, strategy::TradAll{}).weights;
        const auto geo = build_codebook(s, strategy::AiryGeo{}).weights;
        const double gain = to_db(std::norm(effective_channel_diffraction(s, geo).entries(0, 0))) -
                            to_db(std::norm(effective_channel_diffraction(s, trad).entries(0, 0)));
        const bool ok = geo_min > 0.0 && trad_max < 0.0 && gain > 10.0;
        return {ok, fmt("min Airy-Geo SINR %.2f dB (need > 0), max traditional SINR for x2 <= -6 %.2f dB (need < 0), "
                        "shadowed-link gain at x2 = -11 %.2f dB (need > 10)",
                        geo_min, trad_max, gain)};
    }

    Outcome sum_rate_gain()
    {
        const SweepResult &r = shadow_scan();
        double best = -1e9, at = 0.0;
        for (std::size_t i = 0; i < r.points.size(); ++i)
        {
            const double g = r.record(i, "airy_geo").sum_rate - r.record(i, "trad_all").sum_rate;
            if (g > best)
            {
                best = g;
                at = r.points[i].value;
            }
        }
        return {best >= 2.0 && best <= 6.0, fmt("max Airy-Geo minus traditional sum rate %.3f bits/s/Hz at x2 = %.1f (need [2, 6])", best, at)};
    }

    const MixedResult &mixed()
    {
        static const MixedResult r = run_mixed_optimization(presets::mixed(), {});
        return r;
    }

    Outcome optimizer_endpoint()
    {
        const SearchOutcome &o = mixed().outcome;
        const double dt = degrees(o.best_angle_offset);
        const double b = o.best_params.bending, f = o.best_params.focal;
        const bool ok = dt >= -4.0 && dt <= -1.5 && b >= -55.0 && b <= -30.0 && f >= 1.25 && f <= 1.75;
        return {ok, fmt("dtheta* = %.2f deg (need [-4, -1.5]), B* = %.2f (need [-55, -30]), F* = %.3f m (need [1.25, 1.75]), rate %.3f",
                        dt, b, f, o.best_rate)};
    }

    Outcome rebalancing()
    {
        const FieldCut &cut = mixed().cut;
        const double gain = cut.target_gain_db(), change = cut.fixed_change_db();
        const bool ok = gain >= 15.0 && gain <= 27.0 && change >= -8.0 && change <= 0.0;
        return {ok, fmt("UE-1 gain %+.2f dB (need [15, 27]), UE-2 change %+.2f dB (need [-8, 0])", gain, change)};
    }

    Outcome robustness()
    {
        const RobustnessResult r = run_robustness_sweep(presets::mixed(), {});
        const std::size_t trad = r.sweep.strategy_index("trad_all");
        const std::size_t opt = r.sweep.strategy_index("airy_opt");
        double opt_kappa = 0.0, trad_kappa = 1e300, mean = 0.0, worst = 1e300;
        for (std::size_t i = 0; i < r.sweep.points.size(); ++i)
        {
            opt_kappa = std::max(opt_kappa, r.sweep.points[i].records[opt].condition_number);
            trad_kappa = std::min(trad_kappa, r.sweep.points[i].records[trad].condition_number);
            mean += r.gain_vs_trad[opt][i];
            worst = std::min(worst, r.gain_vs_trad[opt][i]);
        }
        mean /= static_cast<double>(r.sweep.points.size());
        const bool ok = opt_kappa < 10.0 && trad_kappa > 50.0 && mean >= 2.5 && mean <= 5.5 && worst > 2.0;
        return {ok, fmt("max Airy-Opt kappa %.2f (need < 10), min traditional kappa %.2f (need > 50), mean gain %+.3f "
                        "(need [2.5, 5.5]), worst gain %+.3f (need > 2)",
                        opt_kappa, trad_kappa, mean, worst)};
    }

    std::string slurp(const fs::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    }

    Outcome determinism(const std::string &cli, const fs::path &work)
    {
        if (cli.empty())
            throw std::runtime_error("no CLI given (--cli)");
        const std::vector<std::pair<std::string, std::string>> commands{
            {"baseline", ""},
            {"shadow", ""},
            {"mixed-opt", ""},
            {"robustness", ""},
            {"fieldmap", "--scenario mixed --strategy mixed --dtheta -2.9 --bending -44 --focal 1.5"},
            {"validate", "--cases 5"},
        };
        std::size_t compared = 0;
        std::vector<std::string> mismatched;
        for (const auto &[name, extra] : commands)
        {
            fs::path dirs[2] = {work / (name + "_a"), work / (name + "_b")};
            for (int run = 0; run < 2; ++run)
            {
                fs::remove_all(dirs[run]);
                const std::string cmd = "\"" + cli + "\" " + name + " --out \"" + dirs[run].string() + "\" --workers " +
                                        (run == 0 ? "1" : "0") + " " + extra + " > \"" + work.string() + "/" + name +
                                        (run == 0 ? "_a" : "_b") + ".log\" 2>&1";
                const int status = std::system(cmd.c_str());
                if (status != 0)
                    mismatched.push_back(name + " (exit status " + std::to_string(status) + ")");
            }
            std::vector<fs::path> files;
            for (const auto &entry : fs::directory_iterator(dirs[0]))
                if (entry.path().extension() == ".csv")
                    files.push_back(entry.path().filename());
            if (files.empty())
                mismatched.push_back(name + " (no CSV)");
            for (const auto &file : files)
            {
                ++compared;
                if (!fs::exists(dirs[1] / file) || slurp(dirs[0] / file) != slurp(dirs[1] / file))
                    mismatched.push_back(name + "/" + file.string());
            }
        }
        std::string detail = fmt("%zu CSV files compared across 6 subcommands (workers 1 vs all)", compared);
        for (const auto &m : mismatched)
            detail += "; differs: " + m;
        return {mismatched.empty(), detail};
    }
}

int main(int argc, char **argv)
{
    std::string cli;
    fs::path work = fs::temp_directory_path() / "airybeam_acceptance";
    for (int i = 1; i + 1 < argc; i += 2)
    {
        const std::string flag = argv[i];
        if (flag == "--cli")
            cli = argv[i + 1];
        else if (flag == "--work")
            work = argv[i + 1];
    }
    fs::create_directories(work);

    const std::vector<Criterion> criteria{
        {1, "propagator unitarity", unitarity},
        {2, "propagation semigroup", semigroup},
        {3, "direct Fresnel oracle", oracle},
        {4, "cross-model calibration", calibration},
        {5, "zero-forcing contract", zero_forcing},
        {6, "Gaussian beam width", gaussian},
        {7, "baseline singularity", singularity},
        {8, "angular window", angular_window},
        {9, "shadow resilience", shadow_resilience},
        {10, "shadow sum-rate gain", sum_rate_gain},
        {11, "optimizer endpoint", optimizer_endpoint},
        {12, "energy rebalancing", rebalancing},
        {13, "robustness", robustness},
        {14, "determinism", [&] { return determinism(cli, work); }},
    };

    int passed = 0, errors = 0;
    for (const auto &c : criteria)
    {
        try
        {
            const Outcome o = c.run();
            passed += o.passed ? 1 : 0;
            std::printf("[%s] %2d %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str());
        }
        catch (const std::exception &e)
        {
            ++errors;
            std::printf("[ERROR] %2d %s: %s\n", c.id, c.name.c_str(), e.what());
        }
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed, %d could not be evaluated\n", passed, criteria.size(), errors);
    return errors == 0 ? 0 : 1;
}
