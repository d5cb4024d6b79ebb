// SPDX-License-Identifier: Apache-2.0
#include "airybeam/optimizer.hpp"
#include "airybeam/errors.hpp"
#include "airybeam/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace airybeam
{
    namespace
    {
        std::vector<double> arange(double first, double last, double step)
        {
            std::vector<double> out;
            const auto count = static_cast<long>(std::floor((last - first) / step + 1e-9));
            for (long i = 0; i <= count; ++i)
                out.push_back(first + static_cast<double>(i) * step);
            return out;
        }

        double axis_step(const std::vector<double> &axis)
        {
            double step = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < axis.size(); ++i)
                step = std::min(step, axis[i] - axis[i - 1]);
            return step;
        }

        std::vector<double> refine_axis(const std::vector<double> &axis, double center, int factor, int span)
        {
            if (axis.size() < 2)
                return {center};
            const double step = axis_step(axis) / factor;
            std::vector<double> out;
            for (int i = -span * factor; i <= span * factor; ++i)
                out.push_back(center + i * step);
            return out;
        }

        struct Candidate
        {
            double bending, focal, offset;
        };

        std::vector<Candidate> product(const std::vector<double> &b, const std::vector<double> &f,
                                       const std::vector<double> &t)
        {
            std::vector<Candidate> out;
            out.reserve(b.size() * f.size() * t.size());
            for (const double bi : b)
                for (const double fi : f)
                    for (const double ti : t)
                        out.push_back({bi, fi, ti});
            return out;
        }

        struct StageResult
        {
            bool found = false;
            std::size_t best = 0;
            std::size_t strongest = 0; // largest |h11|^2, feasible or not
        };

        // Evaluates all candidates concurrently, then reduces in loop order so the first strictly better
        // candidate wins exactly as in a sequential scan
        StageResult run_stage(const MixedProblem &problem, const std::vector<Candidate> &candidates, int stage,
                              const SearchSettings &settings, SearchOutcome &outcome, double &best_rate)
        {
            std::vector<TraceEntry> entries(candidates.size());
            parallel_for(candidates.size(), settings.workers, [&](std::size_t i) {
                const Candidate &c = candidates[i];
                TraceEntry &e = entries[i];
                e = {c.bending, c.focal, c.offset, 0.0, false, 0.0, stage};
                const AiryParams params = problem.params(c.bending, c.focal, c.offset);
                const CandidateResult r = evaluate_candidate(problem, params);
                e.h11_power = r.h11_power;
                e.rate = r.rate;
                e.feasible = r.h11_power >= outcome.threshold;
            });

            StageResult result;
            for (std::size_t i = 0; i < entries.size(); ++i)
            {
                const TraceEntry &e = entries[i];
                if (e.h11_power > entries[result.strongest].h11_power)
                    result.strongest = i;
                if (!e.feasible)
                {
                    ++outcome.rejected_by_constraint;
                    continue;
                }
                if (e.rate > best_rate)
                {
                    result.found = true;
                    result.best = i;
                    best_rate = e.rate;
                }
            }
            outcome.evaluations += entries.size();
            outcome.trace.insert(outcome.trace.end(), entries.begin(), entries.end());
            return result;
        }
    }

    SearchGrids SearchGrids::defaults()
    {
        SearchGrids g;
        g.bending = arange(-60.0, -10.0, 5.0);
        g.focal = arange(1.0, 2.5, 0.25);
        for (const double deg : arange(-5.0, 5.0, 0.5))
            g.angle_offset.push_back(radians(deg));
        return g;
    }

    SearchGrids SearchGrids::singleton(double bending, double focal, double angle_offset)
    {
        SearchGrids g;
        g.bending = {bending};
        g.focal = {focal};
        g.angle_offset = {angle_offset};
        return g;
    }

    std::size_t SearchGrids::fine_size() const noexcept
    {
        auto axis = [&](const std::vector<double> &v) -> std::size_t {
            return v.size() < 2 ? 1 : static_cast<std::size_t>(2 * fine_span * refine_factor + 1);
        };
        if (bending.size() < 2 && focal.size() < 2 && angle_offset.size() < 2)
            return 0;
        return axis(bending) * axis(focal) * axis(angle_offset);
    }

    void SearchGrids::validate() const
    {
        for (const auto *axis : {&bending, &focal, &angle_offset})
        {
            if (axis->empty())
                throw ArgumentError("Search grids must be non-empty.");
            if (!std::is_sorted(axis->begin(), axis->end()) ||
                std::adjacent_find(axis->begin(), axis->end()) != axis->end())
                throw ArgumentError("Search grids must be strictly ascending.");
        }
        if (refine_factor < 2)
            throw ArgumentError("Fine refinement factor must be at least 2.");
        if (fine_span < 1)
            throw ArgumentError("Fine span must be at least one coarse step.");
        if (!(focal.front() > 0.0))
            throw ArgumentError("Focal grid must be positive.");
    }

    MixedProblem::MixedProblem(ScenarioConfig scenario)
        : scenario_(std::move(scenario))
    {
        if (scenario_.users.size() != 2)
            throw ConfigError("The Airy search handles exactly two users.");
        if (!scenario_.obstacle)
            throw ConfigError("The Airy search needs an obstacle.");
        std::vector<std::size_t> shadowed, bright;
        for (std::size_t k = 0; k < 2; ++k)
        {
            const auto state = classify_user(scenario_.users[k], *scenario_.obstacle, scenario_.array);
            (state == Illumination::shadowed ? shadowed : bright).push_back(k);
        }
        if (shadowed.size() != 1 || bright.size() != 1)
            throw ConfigError("The Airy search needs one shadowed and one bright user.");
        target_ = shadowed.front();
        fixed_ = bright.front();
        target_angle_ = geometric_angle(scenario_.users[target_]);
        fixed_beam_ = traditional_focus(scenario_.array, scenario_.carrier, scenario_.users[fixed_]).weights;
        fixed_column_ = diffraction_response(scenario_, fixed_beam_);
    }

    AiryParams MixedProblem::params(double bending, double focal, double angle_offset) const
    {
        return {bending, focal, target_angle_ + angle_offset};
    }

    CandidateResult evaluate_candidate(const MixedProblem &problem, const AiryParams &params, bool rederive_fixed)
    {
        const ScenarioConfig &scenario = problem.scenario();
        const Eigen::VectorXcd beam = airy_weights(scenario.array, scenario.carrier, params).weights;

        CandidateResult out;
        out.beams.resize(beam.size(), 2);
        out.beams.col(static_cast<Eigen::Index>(problem.target())) = beam;
        out.beams.col(static_cast<Eigen::Index>(problem.fixed())) = problem.fixed_beam();

        out.channel = {Eigen::MatrixXcd(2, 2), ChannelModel::fresnel_diffraction, ChannelKind::effective};
        out.channel.entries.col(static_cast<Eigen::Index>(problem.target())) = diffraction_response(scenario, beam);
        out.channel.entries.col(static_cast<Eigen::Index>(problem.fixed())) =
            rederive_fixed ? diffraction_response(scenario, problem.fixed_beam()) : problem.fixed_column();

        out.metrics = evaluate_link(out.channel, out.beams, scenario);
        out.rate = out.metrics.sum_rate;
        const auto t = static_cast<Eigen::Index>(problem.target());
        out.h11_power = std::norm(out.channel.entries(t, t));
        if (!std::isfinite(out.rate) || !std::isfinite(out.h11_power))
            throw CandidateError("Candidate B = " + std::to_string(params.bending) + ", F = " +
                                 std::to_string(params.focal) + " produced a non-finite rate.");
        return out;
    }

    SearchOutcome coarse_to_fine_search(const MixedProblem &problem, const SearchGrids &grids,
                                        const SearchSettings &settings)
    {
        grids.validate();
        if (!(settings.eta > 0.0 && settings.eta < 1.0))
            throw ArgumentError("Relaxation factor eta must lie in (0, 1).");

        SearchOutcome outcome;
        const CandidateResult geo =
            evaluate_candidate(problem, problem.params(settings.geo_bending, settings.geo_focal, 0.0));
        outcome.baseline_gain = geo.h11_power;
        outcome.baseline_rate = geo.rate;
        outcome.threshold = settings.eta * geo.h11_power;

        double best_rate = -std::numeric_limits<double>::infinity();
        const auto coarse = product(grids.bending, grids.focal, grids.angle_offset);
        const StageResult first = run_stage(problem, coarse, 1, settings, outcome, best_rate);
        outcome.coarse_evaluations = outcome.evaluations;
        outcome.coarse_best_rate = best_rate;

        Candidate best = coarse[first.found ? first.best : first.strongest];
        bool found = first.found;

        if (grids.fine_size() > 0)
        {
            const Candidate center = best;
            auto fine_b = refine_axis(grids.bending, center.bending, grids.refine_factor, grids.fine_span);
            auto fine_f = refine_axis(grids.focal, center.focal, grids.refine_factor, grids.fine_span);
            fine_f.erase(std::remove_if(fine_f.begin(), fine_f.end(), [](double f) { return !(f > 0.0); }), fine_f.end());
            // Fine angles are offsets around the coarse winner's angle
            auto fine_t = refine_axis(grids.angle_offset, 0.0, grids.refine_factor, grids.fine_span);
            for (double &t : fine_t)
                t += center.offset;

            const auto fine = product(fine_b, fine_f, fine_t);
            const std::size_t offset = outcome.trace.size();
            const StageResult second = run_stage(problem, fine, 2, settings, outcome, best_rate);
            outcome.fine_evaluations = outcome.evaluations - outcome.coarse_evaluations;
            if (second.found)
            {
                const TraceEntry &e = outcome.trace[offset + second.best];
                best = {e.bending, e.focal, e.angle_offset};
                found = true;
            }
        }

        if (!found)
        {
            double strongest = 0.0;
            for (const auto &e : outcome.trace)
                strongest = std::max(strongest, e.h11_power);
            throw InfeasibleSearchError("No candidate reaches |h11|^2 >= " + std::to_string(outcome.threshold) +
                                            " (best seen " + std::to_string(strongest) + ").",
                                        strongest, outcome.threshold);
        }

        outcome.best_params = problem.params(best.bending, best.focal, best.offset);
        outcome.best_angle_offset = best.offset;
        outcome.best_rate = best_rate;
        return outcome;
    }

    double complexity_estimate(std::size_t coarse, std::size_t fine, std::size_t nx) noexcept
    {
        return static_cast<double>(coarse + fine) * static_cast<double>(nx) * std::log2(static_cast<double>(nx));
    }

    double complexity_estimate(const SearchGrids &grids, const GridSpec &grid) noexcept
    {
        return complexity_estimate(grids.coarse_size(), grids.fine_size(), grid.num_samples());
    }
}
