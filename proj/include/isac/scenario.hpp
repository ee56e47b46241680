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

#include "isac/keyvalue.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace isac
{
    enum class Scenario
    {
        UMi, // UMi - Street Canyon
    };

    enum class LinkCondition
    {
        LOS,
        NLOS,
    };

    std::string_view to_string(LinkCondition c);
    std::string_view to_string(Scenario s);
    Scenario parse_scenario(std::string_view name); // throws ConfigError

    // a + b * log10(1 + fc[GHz])
    struct FreqDependent
    {
        double a = 0.0;
        double b = 0.0;
        double at(double fc_ghz) const { return a + b * std::log10(1.0 + fc_ghz); }
    };

    struct ZsdMeanModel
    {
        double floor = 0.0;
        double intercept = 0.0;
        double slope_per_km = 0.0;
        double dh = 0.0;

        // log10(ZSD/deg) mean for a given 2D distance and height difference
        double at(double d2d_m, double height_diff_m) const
        {
            return std::max(floor, intercept + slope_per_km * d2d_m / 1000.0 + dh * std::abs(height_diff_m));
        }
    };

    // One (scenario, condition) record.
    struct ConditionParams
    {
        int clusters = 0;
        int rays_per_cluster = 0;
        double sf_sigma_db = 0.0;
        double k_mu_db = 0.0;
        double k_sigma_db = 0.0;
        FreqDependent lg_ds_mu, lg_ds_sigma;
        FreqDependent lg_asd_mu, lg_asd_sigma;
        FreqDependent lg_asa_mu, lg_asa_sigma;
        FreqDependent lg_zsa_mu, lg_zsa_sigma;
        ZsdMeanModel lg_zsd_mu;
        double lg_zsd_sigma = 0.0;
        std::optional<FreqDependent> zod_offset; // -10^(a*log10(max(10,d2D)) + b), a/b reuse the FreqDependent slots
        double r_tau = 1.0;
        double xpr_mu_db = 0.0;
        double xpr_sigma_db = 0.0;
        double c_ds_ns = 0.0;
        double c_asd_deg = 0.0;
        double c_asa_deg = 0.0;
        double c_zsa_deg = 0.0;
        double cluster_shadow_db = 0.0;
        std::optional<double> abs_delay_lg_mu;
        std::optional<double> abs_delay_lg_sigma;

        double zod_offset_deg(double d2d_m) const
        {
            if (!zod_offset)
                return 0.0;
            return -std::pow(10.0, zod_offset->a * std::log10(std::max(10.0, d2d_m)) + zod_offset->b);
        }
    };

    struct ScenarioParams
    {
        Scenario scenario = Scenario::UMi;
        double frequency_hz = 0.0;
        double freq_min_ghz = 0.0;
        double freq_max_ghz = 0.0;
        double d3d_min_m = 0.0;
        double d3d_max_m = 0.0;
        ConditionParams los;
        ConditionParams nlos;

        const ConditionParams &at(LinkCondition c) const { return c == LinkCondition::LOS ? los : nlos; }
        ConditionParams &at(LinkCondition c) { return c == LinkCondition::LOS ? los : nlos; }
        double fc_ghz() const { return frequency_hz / 1e9; }
        double wavelength() const;
    };

    // Text of the scenario table compiled into the library (data/scenarios.txt).
    std::string_view builtin_scenario_table();

    // Reads one scenario record from a parsed table and checks it against the frequency.
    ScenarioParams load_scenario(const KeyValueFile &table, Scenario scenario, double frequency_hz);

    // load_scenario() on the built-in table.
    ScenarioParams builtin_scenario(Scenario scenario, double frequency_hz);
}
