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

#include "isac/scenario.hpp"

#include "isac/error.hpp"
#include "isac/geometry.hpp"
#include "scenario_table_data.hpp"

namespace isac
{
    std::string_view to_string(LinkCondition c) { return c == LinkCondition::LOS ? "LOS" : "NLOS"; }

    std::string_view to_string(Scenario s)
    {
        switch (s)
        {
        case Scenario::UMi:
            return "UMi";
        }
        return "?";
    }

    Scenario parse_scenario(std::string_view name)
    {
        if (name == "UMi" || name == "UMi-StreetCanyon")
            return Scenario::UMi;
        throw ConfigError("unsupported scenario '" + std::string(name) + "' (available: UMi)");
    }

    double ScenarioParams::wavelength() const { return kSpeedOfLight / frequency_hz; }

    std::string_view builtin_scenario_table() { return detail::kBuiltinScenarioTable; }

    namespace
    {
        FreqDependent read_freq(const KeyValueFile &t, const std::string &key)
        {
            auto v = t.numbers(key);
            if (v.size() == 1)
                return {v[0], 0.0};
            if (v.size() == 2)
                return {v[0], v[1]};
            throw ConfigError(t.where(key) + "key '" + key + "': expected 'a' or 'a, b'");
        }

        ConditionParams read_condition(const KeyValueFile &t, const std::string &p)
        {
            ConditionParams c;
            c.clusters = int(t.integer(p + "clusters"));
            c.rays_per_cluster = int(t.integer(p + "rays_per_cluster"));
            c.sf_sigma_db = t.number(p + "sf_sigma_db");
            c.k_mu_db = t.number_or(p + "K.mu_db", 0.0);
            c.k_sigma_db = t.number_or(p + "K.sigma_db", 0.0);
            c.lg_ds_mu = read_freq(t, p + "lgDS.mu");
            c.lg_ds_sigma = read_freq(t, p + "lgDS.sigma");
            c.lg_asd_mu = read_freq(t, p + "lgASD.mu");
            c.lg_asd_sigma = read_freq(t, p + "lgASD.sigma");
            c.lg_asa_mu = read_freq(t, p + "lgASA.mu");
            c.lg_asa_sigma = read_freq(t, p + "lgASA.sigma");
            c.lg_zsa_mu = read_freq(t, p + "lgZSA.mu");
            c.lg_zsa_sigma = read_freq(t, p + "lgZSA.sigma");
            c.lg_zsd_mu.floor = t.number(p + "lgZSD.floor");
            c.lg_zsd_mu.intercept = t.number(p + "lgZSD.intercept");
            c.lg_zsd_mu.slope_per_km = t.number(p + "lgZSD.slope_per_km");
            c.lg_zsd_mu.dh = t.number(p + "lgZSD.dh");
            c.lg_zsd_sigma = t.number(p + "lgZSD.sigma");
            if (t.has(p + "zod_offset.a"))
                c.zod_offset = FreqDependent{t.number(p + "zod_offset.a"), t.number(p + "zod_offset.b")};
            c.r_tau = t.number(p + "r_tau");
            c.xpr_mu_db = t.number(p + "xpr.mu_db");
            c.xpr_sigma_db = t.number(p + "xpr.sigma_db");
            c.c_ds_ns = t.number(p + "c_ds_ns");
            c.c_asd_deg = t.number(p + "c_asd_deg");
            c.c_asa_deg = t.number(p + "c_asa_deg");
            c.c_zsa_deg = t.number(p + "c_zsa_deg");
            c.cluster_shadow_db = t.number(p + "cluster_shadow_db");
            if (t.has(p + "abs_delay.lg_mu"))
            {
                c.abs_delay_lg_mu = t.number(p + "abs_delay.lg_mu");
                c.abs_delay_lg_sigma = t.number(p + "abs_delay.lg_sigma");
            }

            if (c.clusters <= 0 || c.rays_per_cluster <= 0)
                throw ConfigError(t.where(p + "clusters") + p + "clusters and rays_per_cluster must be positive");
            if (c.r_tau <= 0.0 || c.sf_sigma_db < 0.0 || c.k_sigma_db < 0.0 || c.xpr_sigma_db < 0.0 || c.cluster_shadow_db < 0.0)
                throw ConfigError(t.where(p + "r_tau") + p + "invalid table: r_tau must be positive and standard deviations nonnegative");
            return c;
        }
    }

    ScenarioParams load_scenario(const KeyValueFile &t, Scenario scenario, double frequency_hz)
    {
        const std::string s(to_string(scenario));
        ScenarioParams sp;
        sp.scenario = scenario;
        sp.frequency_hz = frequency_hz;
        sp.freq_min_ghz = t.number(s + ".freq_min_ghz");
        sp.freq_max_ghz = t.number(s + ".freq_max_ghz");
        sp.d3d_min_m = t.number(s + ".d3d_min_m");
        sp.d3d_max_m = t.number(s + ".d3d_max_m");
        sp.los = read_condition(t, s + ".LOS.");
        sp.nlos = read_condition(t, s + ".NLOS.");
        if (!(frequency_hz > 0.0) || sp.fc_ghz() < sp.freq_min_ghz || sp.fc_ghz() > sp.freq_max_ghz)
            throw ConfigError("frequency " + std::to_string(frequency_hz) + " Hz outside the " + s + " table validity range [" +
                              std::to_string(sp.freq_min_ghz) + ", " + std::to_string(sp.freq_max_ghz) + "] GHz");
        return sp;
    }

    ScenarioParams builtin_scenario(Scenario scenario, double frequency_hz)
    {
        // parsed per call: KeyValueFile tracks key usage and is not shareable across threads
        const KeyValueFile table = KeyValueFile::parse(builtin_scenario_table(), "builtin:scenarios.txt");
        return load_scenario(table, scenario, frequency_hz);
    }
}
