// SPDX-License-Identifier: Apache-2.0
#include "airybeam/io.hpp"
#include "airybeam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

namespace airybeam::io
{
    namespace
    {
        class CsvWriter
        {
        public:
            explicit CsvWriter(const std::filesystem::path &path)
                : path_(path)
            {
                if (path.has_parent_path())
                    std::filesystem::create_directories(path.parent_path());
                file_.open(path, std::ios::binary);
                if (!file_)
                    throw ConfigError("cannot open '" + path.string() + "' for writing");
            }

            CsvWriter &cell(const std::string &text)
            {
                if (!first_)
                    line_ << ',';
                first_ = false;
                line_ << text;
                return *this;
            }
            // Without this overload string literals would bind to cell(bool)
            CsvWriter &cell(const char *text) { return cell(std::string(text)); }
            CsvWriter &cell(double value) { return cell(format_number(value)); }
            CsvWriter &cell(std::size_t value) { return cell(std::to_string(value)); }
            CsvWriter &cell(bool value) { return cell(std::string(value ? "1" : "0")); }

            void end()
            {
                file_ << line_.str() << '\n';
                line_.str({});
                first_ = true;
            }

        private:
            std::filesystem::path path_;
            std::ofstream file_;
            std::ostringstream line_;
            bool first_ = true;
        };

        std::string coupling_name(Eigen::Index r, Eigen::Index c)
        {
            return "coupling_db_" + std::to_string(r + 1) + std::to_string(c + 1);
        }
    }

    void write_metrics_csv(const std::filesystem::path &path, const SweepResult &sweep)
    {
        CsvWriter csv(path);
        Eigen::Index k = 0;
        if (!sweep.points.empty() && !sweep.points.front().records.empty())
            k = sweep.points.front().records.front().coupling_db.rows();

        csv.cell("scenario_hash").cell(sweep.variable);
        for (const char *name : {"kappa", "sigma_max", "sigma_min", "alpha_power", "sinr_db", "sum_rate"})
            csv.cell(std::string(name));
        for (Eigen::Index r = 0; r < k; ++r)
            for (Eigen::Index c = 0; c < k; ++c)
                csv.cell(coupling_name(r, c));
        for (const char *name : {"strategy", "equalized", "singular", "zf_residual"})
            csv.cell(std::string(name));
        for (const auto &extra : sweep.extra_columns)
            csv.cell(extra);
        csv.end();

        for (const auto &point : sweep.points)
        {
            for (std::size_t j = 0; j < point.records.size(); ++j)
            {
                const MetricsRecord &m = point.records[j];
                csv.cell(sweep.scenario_hash).cell(point.value);
                csv.cell(m.condition_number).cell(m.sigma_max()).cell(m.sigma_min());
                csv.cell(m.alpha_power).cell(m.common_sinr_db).cell(m.sum_rate);
                for (Eigen::Index r = 0; r < m.coupling_db.rows(); ++r)
                    for (Eigen::Index c = 0; c < m.coupling_db.cols(); ++c)
                        csv.cell(m.coupling_db(r, c));
                csv.cell(sweep.strategies.at(j)).cell(m.equalized).cell(m.singular).cell(m.zf_residual);
                for (const double extra : point.extras)
                    csv.cell(extra);
                csv.end();
            }
        }
    }

    void write_channel_csv(const std::filesystem::path &path, const ChannelMatrix &channel)
    {
        CsvWriter csv(path);
        for (Eigen::Index c = 0; c < channel.entries.cols(); ++c)
            csv.cell("re_" + std::to_string(c + 1)).cell("im_" + std::to_string(c + 1));
        csv.end();
        for (Eigen::Index r = 0; r < channel.entries.rows(); ++r)
        {
            for (Eigen::Index c = 0; c < channel.entries.cols(); ++c)
                csv.cell(channel.entries(r, c).real()).cell(channel.entries(r, c).imag());
            csv.end();
        }
    }

    void write_codebook_csv(const std::filesystem::path &path, const ScenarioConfig &scenario, const Codebook &book)
    {
        CsvWriter csv(path);
        csv.cell("element").cell("x_m");
        for (Eigen::Index j = 0; j < book.weights.cols(); ++j)
            csv.cell("phase_rad_" + std::to_string(j + 1));
        csv.end();
        for (Eigen::Index n = 0; n < book.weights.rows(); ++n)
        {
            csv.cell(static_cast<std::size_t>(n + 1)).cell(scenario.array.element_x(static_cast<std::size_t>(n)));
            for (Eigen::Index j = 0; j < book.weights.cols(); ++j)
                csv.cell(std::arg(book.weights(n, j)));
            csv.end();
        }
    }

    void write_trace_csv(const std::filesystem::path &path, const SearchOutcome &outcome)
    {
        CsvWriter csv(path);
        for (const char *name : {"B", "F", "dtheta_deg", "h11_power", "feasible", "rate", "stage"})
            csv.cell(std::string(name));
        csv.end();
        for (const auto &e : outcome.trace)
        {
            csv.cell(e.bending).cell(e.focal).cell(degrees(e.angle_offset)).cell(e.h11_power).cell(e.feasible);
            csv.cell(e.rate).cell(static_cast<std::size_t>(e.stage));
            csv.end();
        }
    }

    void write_intensity_csv(const std::filesystem::path &path, const IntensityMap &map)
    {
        CsvWriter csv(path);
        for (std::size_t r = 0; r < map.depths.size(); ++r)
        {
            for (std::size_t c = 0; c < map.x.size(); ++c)
                csv.cell(map.at(r, c));
            csv.end();
        }
    }

    void write_fieldcut_csv(const std::filesystem::path &path, const FieldCut &cut, double wavelength)
    {
        CsvWriter csv(path);
        csv.cell("x_lambda").cell("airy_geo_db").cell("airy_opt_db").end();
        for (std::size_t i = 0; i < cut.x.size(); ++i)
            csv.cell(cut.x[i] / wavelength).cell(cut.geo_db[i]).cell(cut.opt_db[i]).end();
    }

    void write_robustness_summary_csv(const std::filesystem::path &path, const RobustnessResult &result)
    {
        const auto &names = result.sweep.strategies;
        CsvWriter csv(path);
        csv.cell("abs_dx2_lambda");
        for (const auto &name : names)
            csv.cell("worst_rate_" + name);
        for (const auto &name : names)
            csv.cell("worst_gain_" + name);
        csv.end();
        for (std::size_t i = 0; i < result.magnitudes.size(); ++i)
        {
            csv.cell(result.magnitudes[i]);
            for (std::size_t j = 0; j < names.size(); ++j)
                csv.cell(result.worst_rate[j][i]);
            // Worst-case gain: smallest rate difference to trad_all within the interval
            for (std::size_t j = 0; j < names.size(); ++j)
            {
                double worst = std::numeric_limits<double>::infinity();
                for (std::size_t p = 0; p < result.sweep.points.size(); ++p)
                    if (std::abs(result.sweep.points[p].value) <= result.magnitudes[i] + 1e-12)
                        worst = std::min(worst, result.gain_vs_trad[j][p]);
                csv.cell(worst);
            }
            csv.end();
        }
    }

    TextDocument sidecar(const std::string &command, const ScenarioConfig &scenario)
    {
        TextDocument doc;
        doc.add("run").set("command", command).set("scenario_hash", scenario.hash()).set("version", "0.1.0");
        TextDocument config = to_document(scenario);
        for (auto &section : config.sections)
        {
            section.name = "scenario." + section.name;
            doc.sections.push_back(std::move(section));
        }
        return doc;
    }

    void add_invariants(TextDocument &doc, const InvariantReport &report)
    {
        auto &s = doc.add("invariants");
        s.set("checked", report.checked).set("failed", report.failures.size()).set("passed", report.ok());
        for (std::size_t i = 0; i < report.failures.size() && i < 20; ++i)
            s.set("failure", report.failures[i]);
    }

    void add_outcome(TextDocument &doc, const SearchOutcome &outcome, std::size_t nx)
    {
        doc.add("search")
            .set("best_bending", outcome.best_params.bending)
            .set("best_focal_m", outcome.best_params.focal)
            .set("best_dtheta_deg", degrees(outcome.best_angle_offset))
            .set("best_theta_deg", degrees(outcome.best_params.launch_angle))
            .set("best_rate", outcome.best_rate)
            .set("coarse_best_rate", outcome.coarse_best_rate)
            .set("baseline_gain", outcome.baseline_gain)
            .set("baseline_rate", outcome.baseline_rate)
            .set("threshold", outcome.threshold)
            .set("evaluations", outcome.evaluations)
            .set("coarse_evaluations", outcome.coarse_evaluations)
            .set("fine_evaluations", outcome.fine_evaluations)
            .set("rejected_by_constraint", outcome.rejected_by_constraint)
            .set("complexity_units", complexity_estimate(outcome.coarse_evaluations, outcome.fine_evaluations, nx));
    }

    void add_grid(TextDocument &doc, const GridSpec &grid, double wavelength)
    {
        doc.add("grid")
            .set("nx", grid.num_samples())
            .set("window_lambda", grid.window_width() / wavelength)
            .set("spacing_lambda", grid.spacing() / wavelength)
            .set("apodization_width_lambda", grid.apodization_width() / wavelength)
            .set("x_first_m", grid.x(0))
            .set("x_step_m", grid.spacing());
    }
}
