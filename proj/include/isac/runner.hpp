// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The isacsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "isac/config.hpp"
#include "isac/metrics.hpp"
#include "isac/stats.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isac
{
    struct HopSummary
    {
        LinkCondition condition = LinkCondition::NLOS;
        double d3d = 0.0;
        double path_loss_db = 0.0;
        double shadow_fading_db = 0.0;
        double k_factor = 0.0;
    };

    struct CaseResult
    {
        DropStatistics stats;
        double nn_power = 0.0;
        std::size_t n_paths = 0;
    };

    struct DropResult
    {
        int drop = 0;
        HopSummary tx_target;
        HopSummary target_rx;
        double pl_target_db = 0.0; // concatenated, uses the RCS mean A
        std::optional<HopSummary> background;
        double pl_isac_db = 0.0; // coupling-factor combination of target and background gains
        double target_power = 0.0;     // synthesized, all elements, snapshot 0
        double background_power = 0.0;
        double combined_power = 0.0;
        std::vector<CaseResult> cases;
        std::optional<ChannelCir> cir; // combined channel, kept only when requested
    };

    // Immutable per-run state shared by all drops.
    struct DropContext
    {
        RunConfig cfg;
        ScenarioParams scenario;
        NodeState tx;
        NodeState rx;
        NodeState target;

        explicit DropContext(const RunConfig &config);
    };

    struct DropOptions
    {
        std::vector<ConcatCase> cases;
        std::optional<LinkCondition> force_tx_target;
        std::optional<LinkCondition> force_target_rx;
        bool synthesize = false; // coefficients, background and combination
        bool keep_cir = false;
        Execution exec = Execution::Parallel; // coefficient kernel
    };

    // One Monte-Carlo drop. Every random quantity comes from streams keyed by (seed, drop).
    DropResult simulate_drop(const DropContext &ctx, int drop, const DropOptions &options);

    // Drops [first, first + count). Parallel mode runs drops concurrently on `workers` threads;
    // results are ordered by drop index either way.
    std::vector<DropResult> run_drops(const DropContext &ctx, int first, int count, const DropOptions &options,
                                      int workers, Execution exec = Execution::Parallel);

    struct RunManifest
    {
        std::string command;
        std::filesystem::path directory;
        std::map<std::string, std::string> sha256; // file name -> hex digest
        std::map<std::string, double> timings_s;
    };

    // Full pipeline for cfg.concat_case; writes stats.tsv, large_scale.tsv, cdf.tsv,
    // optional cir.tsv and manifest.json into out_dir.
    RunManifest run(const RunConfig &cfg, const std::filesystem::path &out_dir, int workers);

    // All ten cases per drop for each condition set; writes study_stats.tsv, study_cdf.tsv,
    // study_ks.tsv and manifest.json.
    RunManifest concat_study(const RunConfig &cfg, const std::filesystem::path &out_dir, int workers);

    struct DetectionRow
    {
        double snr_db = 0.0;
        double target_pfa = 0.0;
        double threshold = 0.0;
        double pfa = 0.0;
        double pd = 0.0;
    };

    std::vector<DetectionRow> detection_table(double noise_std, const std::vector<double> &pfas, double snr_min_db,
                                              double snr_max_db, double snr_step_db);
    RunManifest write_detection_table(const std::vector<DetectionRow> &rows, const std::filesystem::path &out_dir);

    // One positive value per line, '#' comments.
    std::vector<double> read_samples(const std::filesystem::path &path);
    std::vector<double> generate_rcs_samples(double mu_db, double sigma_db, int count, std::uint64_t seed);

    // Fresh "<timestamp>-seed<seed>" directory below root (suffixed when it already exists).
    std::filesystem::path make_run_directory(const std::filesystem::path &root, std::uint64_t seed);

    std::string sha256_file(const std::filesystem::path &path);
    void write_manifest(const RunManifest &m, const RunConfig *cfg, int workers);
    // Re-hashes every listed file; returns the names that do not match.
    std::vector<std::string> verify_manifest(const std::filesystem::path &directory);
}
