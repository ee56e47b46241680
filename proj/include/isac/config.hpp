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

#include "isac/coefficients.hpp"
#include "isac/keyvalue.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isac
{
    struct NodeConfig
    {
        Vec3 position;
        Vec3 velocity;
        Vec3 micro_velocity;
        int array_count = 1;
        double spacing_wl = 0.5;
        ArrayAxis axis = ArrayAxis::Y;
        ElementPattern pattern = ElementPattern::Isotropic;
        double slant_deg = 0.0;
        Orientation orientation; // radians

        NodeState node(NodeRole role, double wavelength) const;
    };

    struct RunConfig
    {
        Scenario scenario = Scenario::UMi;
        double frequency_hz = 0.0;
        SensingMode sensing_mode = SensingMode::Bistatic;
        ConcatCase concat_case = ConcatCase::Case0;
        int drops = 1;
        std::uint64_t seed = 0;
        NodeConfig tx;
        NodeConfig rx;
        NodeConfig target;
        RcsModel rcs;
        PolarizationConfig polarization;
        SnapshotGrid snapshots;
        CouplingConfig coupling;
        std::optional<LinkCondition> condition_tx_target;
        std::optional<LinkCondition> condition_target_rx;
        std::optional<LinkCondition> condition_background;
        SmallScaleOptions small_scale;
        bool background_enabled = true;
        bool write_cir = false;
        std::string scenario_file; // empty: built-in table
        std::vector<ConditionPair> study_conditions; // concat-study; empty: use the condition.* keys
        std::string source_text; // config echo for the manifest

        double wavelength() const { return kSpeedOfLight / frequency_hz; }
    };

    // Parses, defaults and range-checks a config. Unknown keys are rejected. Errors are
    // ConfigError with "source:line:" context and the offending key.
    RunConfig validate_config(const KeyValueFile &raw);
    RunConfig validate_config(std::string_view text, std::string source_name = "<config>");
    RunConfig load_config(const std::string &path);

    // Scenario parameters named by the config (built-in table or scenario_file).
    ScenarioParams resolve_scenario(const RunConfig &cfg);

    // Reference setup for the concatenation study: UMi, bi-static, 6 GHz, unit RCS,
    // Tx (0,0,10), Rx (200,0,10), target (100,50,1.5).
    RunConfig reference_config(int drops = 500, std::uint64_t seed = 2024);

    std::vector<std::string> split_list(std::string_view text);
}
