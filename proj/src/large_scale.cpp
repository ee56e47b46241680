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

#include "isac/large_scale.hpp"

#include "isac/error.hpp"

#include <cmath>
#include <string>

namespace isac
{
    double los_probability(const ScenarioParams &scenario, double d2d)
    {
        if (!(d2d >= 0.0))
            throw DomainError("los_probability: d2D must be nonnegative");
        switch (scenario.scenario)
        {
        case Scenario::UMi:
            if (d2d <= 18.0)
                return 1.0;
            return 18.0 / d2d + std::exp(-d2d / 36.0) * (1.0 - 18.0 / d2d);
        }
        throw ConfigError("los_probability: unsupported scenario");
    }

    namespace
    {
        double umi_los(double d3d, double fc_ghz, std::optional<NodeHeights> h)
        {
            const double pl1 = 32.4 + 21.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz);
            if (!h)
                return pl1;
            const double hbs = h->h_bs - 1.0, hut = h->h_ut - 1.0; // effective environment height 1 m
            if (hbs <= 0.0 || hut <= 0.0)
                return pl1;
            const double dbp = 4.0 * hbs * hut * fc_ghz * 1e9 / kSpeedOfLight;
            const double dh = h->h_bs - h->h_ut;
            const double d2d = std::sqrt(std::max(d3d * d3d - dh * dh, 0.0));
            if (d2d <= dbp)
                return pl1;
            return 32.4 + 40.0 * std::log10(d3d) + 20.0 * std::log10(fc_ghz) - 9.5 * std::log10(dbp * dbp + dh * dh);
        }
    }

    double hop_path_loss(const ScenarioParams &scenario, LinkCondition condition, double d3d, double frequency_hz,
                         std::optional<NodeHeights> heights)
    {
        if (!(d3d >= scenario.d3d_min_m))
            throw DomainError("hop_path_loss: d3D = " + std::to_string(d3d) + " m below the minimum " +
                              std::to_string(scenario.d3d_min_m) + " m");
        if (!(d3d <= scenario.d3d_max_m))
            throw DomainError("hop_path_loss: d3D = " + std::to_string(d3d) + " m above the maximum " +
                              std::to_string(scenario.d3d_max_m) + " m");
        if (!(frequency_hz > 0.0))
            throw DomainError("hop_path_loss: frequency must be positive");
        const double fc = frequency_hz / 1e9;
        switch (scenario.scenario)
        {
        case Scenario::UMi:
        {
            const double los = umi_los(d3d, fc, heights);
            if (condition == LinkCondition::LOS)
                return los;
            const double hut = heights ? heights->h_ut : 1.5;
            const double nlos = 35.3 * std::log10(d3d) + 22.4 + 21.3 * std::log10(fc) - 0.3 * (hut - 1.5);
            return std::max(los, nlos);
        }
        }
        throw ConfigError("hop_path_loss: unsupported scenario");
    }

    double concatenated_path_loss(double pl1_db, double pl2_db, double frequency_hz, double mean_rcs_m2, double c)
    {
        if (!(mean_rcs_m2 > 0.0))
            throw DomainError("RCS mean must be positive");
        if (!(frequency_hz > 0.0))
            throw DomainError("concatenated_path_loss: frequency must be positive");
        return pl1_db + pl2_db + 10.0 * std::log10(c * c / (4.0 * kPi * frequency_hz * frequency_hz)) -
               10.0 * std::log10(mean_rcs_m2);
    }

    double combine_isac_path_loss(double target_linear, double background_linear, const CouplingConfig &cfg)
    {
        if (target_linear < 0.0 || background_linear < 0.0 || cfg.o_isac < 0.0)
            throw DomainError("combine_isac_path_loss: inputs must be nonnegative linear values");
        if (!std::isfinite(cfg.o_isac))
            throw DomainError("combine_isac_path_loss: O_isac must be finite");
        if (cfg.mode == CombinationMode::TargetEmbeddedInBackground)
            return cfg.o_isac * background_linear;
        return target_linear + cfg.o_isac * background_linear;
    }

    double draw_k_factor(const ScenarioParams &scenario, LinkCondition condition, RandomStream &rng)
    {
        if (condition == LinkCondition::NLOS)
            return 0.0;
        const auto &p = scenario.at(condition);
        const double k_db = p.k_sigma_db > 0.0 ? rng.normal(p.k_mu_db, p.k_sigma_db) : p.k_mu_db;
        return std::pow(10.0, k_db / 10.0);
    }

    HopLink make_hop(const NodeState &from, const NodeState &to, const ScenarioParams &scenario,
                     std::optional<LinkCondition> forced, const RngContext &ctx)
    {
        HopLink hop;
        hop.from = from;
        hop.to = to;
        const Vec3 d = to.position - from.position;
        hop.d2d = d.norm_2d();
        hop.d3d = d.norm();
        if (!(hop.d3d > 0.0))
            throw DomainError("degenerate geometry: hop endpoints coincide");

        if (forced)
        {
            hop.condition = *forced;
        }
        else
        {
            auto s = ctx.stream(RngTag::LinkCondition);
            hop.condition = s.uniform() < los_probability(scenario, hop.d2d) ? LinkCondition::LOS : LinkCondition::NLOS;
        }

        hop.path_loss_db = hop_path_loss(scenario, hop.condition, hop.d3d, scenario.frequency_hz, hop.heights());
        auto sf = ctx.stream(RngTag::ShadowFading);
        hop.shadow_fading_db = sf.normal(0.0, scenario.at(hop.condition).sf_sigma_db);
        auto ks = ctx.stream(RngTag::KFactor);
        hop.k_factor = draw_k_factor(scenario, hop.condition, ks);
        return hop;
    }
}
