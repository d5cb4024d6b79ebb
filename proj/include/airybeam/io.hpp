// SPDX-License-Identifier: Apache-2.0
//
// CSV writers. Numbers use the shortest round-trip representation so reruns are byte-identical.
//
// Metrics rows: scenario_hash, <sweep variable>, kappa, sigma_max, sigma_min, alpha_power, sinr_db, sum_rate,
// coupling_db_11 .. coupling_db_KK (row-major), then strategy, equalized, singular, zf_residual and any
// sweep-specific extra columns.
#pragma once

#include "airybeam/beams.hpp"
#include "airybeam/config.hpp"
#include "airybeam/experiments.hpp"

#include <filesystem>
#include <string>

namespace airybeam::io
{
    void write_metrics_csv(const std::filesystem::path &path, const SweepResult &sweep);
    void write_channel_csv(const std::filesystem::path &path, const ChannelMatrix &channel);
    void write_codebook_csv(const std::filesystem::path &path, const ScenarioConfig &scenario, const Codebook &book);
    void write_trace_csv(const std::filesystem::path &path, const SearchOutcome &outcome);
    void write_intensity_csv(const std::filesystem::path &path, const IntensityMap &map);
    void write_fieldcut_csv(const std::filesystem::path &path, const FieldCut &cut, double wavelength);
    void write_robustness_summary_csv(const std::filesystem::path &path, const RobustnessResult &result);

    // Sidecar skeleton: [run] section plus the full scenario
    TextDocument sidecar(const std::string &command, const ScenarioConfig &scenario);
    void add_invariants(TextDocument &doc, const InvariantReport &report);
    void add_outcome(TextDocument &doc, const SearchOutcome &outcome, std::size_t nx);
    void add_grid(TextDocument &doc, const GridSpec &grid, double wavelength);
}
