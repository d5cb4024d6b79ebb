// SPDX-License-Identifier: Apache-2.0
//
// Coarse-to-fine grid search over the Airy parameters of the shadowed user's beam, with the bright user's
// traditional beam held fixed. Candidates whose own-link power |h11|^2 falls below eta times the geometric
// Airy baseline are rejected.
#pragma once

#include "airybeam/beams.hpp"
#include "airybeam/precoding.hpp"

#include <vector>

namespace airybeam
{
    struct SearchGrids
    {
        std::vector<double> bending;     // B
        std::vector<double> focal;       // F [m]
        std::vector<double> angle_offset; // delta theta relative to the geometric angle [rad]
        int refine_factor = 5;
        int fine_span = 1; // coarse steps on each side of the incumbent

        // B -60..-10 step 5, F 1.00..2.50 m step 0.25, delta theta -5..+5 deg step 0.5
        static SearchGrids defaults();
        static SearchGrids singleton(double bending, double focal, double angle_offset);

        std::size_t coarse_size() const noexcept { return bending.size() * focal.size() * angle_offset.size(); }

        // Points per axis in the fine stage (1 for singleton axes)
        std::size_t fine_size() const noexcept;

        void validate() const;
    };

    struct SearchSettings
    {
        double eta = 0.4;
        double geo_bending = -25.0;
        double geo_focal = 1.75;
        std::size_t workers = 0; // 0 = hardware concurrency
    };

    // Mixed shadowed/bright geometry with the bright user's beam and channel column precomputed
    class MixedProblem
    {
    public:
        explicit MixedProblem(ScenarioConfig scenario);

        const ScenarioConfig &scenario() const noexcept { return scenario_; }
        std::size_t target() const noexcept { return target_; } // shadowed user
        std::size_t fixed() const noexcept { return fixed_; }   // bright user
        const Eigen::VectorXcd &fixed_beam() const noexcept { return fixed_beam_; }
        const Eigen::VectorXcd &fixed_column() const noexcept { return fixed_column_; }
        double target_angle() const noexcept { return target_angle_; }

        AiryParams params(double bending, double focal, double angle_offset) const;

    private:
        ScenarioConfig scenario_;
        std::size_t target_ = 0;
        std::size_t fixed_ = 1;
        double target_angle_ = 0.0;
        Eigen::VectorXcd fixed_beam_;
        Eigen::VectorXcd fixed_column_;
    };

    struct CandidateResult
    {
        double rate = 0.0;
        double h11_power = 0.0;
        MetricsRecord metrics;
        Eigen::MatrixXcd beams;
        ChannelMatrix channel;
    };

    // Builds the Airy column for the target user, propagates it and evaluates the 2-user link.
    // rederive_fixed recomputes the bright user's column instead of using the cached one.
    CandidateResult evaluate_candidate(const MixedProblem &problem, const AiryParams &params,
                                       bool rederive_fixed = false);

    struct TraceEntry
    {
        double bending = 0.0;
        double focal = 0.0;
        double angle_offset = 0.0;
        double h11_power = 0.0;
        bool feasible = false;
        double rate = 0.0;
        int stage = 1; // 1 coarse, 2 fine
    };

    struct SearchOutcome
    {
        AiryParams best_params;
        double best_angle_offset = 0.0;
        double best_rate = 0.0;
        double coarse_best_rate = 0.0;
        double baseline_gain = 0.0; // |h11|^2 of the geometric baseline
        double baseline_rate = 0.0;
        double threshold = 0.0;     // eta * baseline_gain
        std::size_t evaluations = 0;
        std::size_t coarse_evaluations = 0;
        std::size_t fine_evaluations = 0;
        std::size_t rejected_by_constraint = 0;
        std::vector<TraceEntry> trace;
    };

    SearchOutcome coarse_to_fine_search(const MixedProblem &problem, const SearchGrids &grids,
                                        const SearchSettings &settings = {});

    // (N_coarse + N_fine) Nx log2(Nx)
    double complexity_estimate(std::size_t coarse, std::size_t fine, std::size_t nx) noexcept;
    double complexity_estimate(const SearchGrids &grids, const GridSpec &grid) noexcept;
}
