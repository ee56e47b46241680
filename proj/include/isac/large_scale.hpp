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

#include "isac/geometry.hpp"
#include "isac/rng.hpp"
#include "isac/scenario.hpp"

#include <optional>

namespace isac
{
    struct NodeHeights
    {
        double h_bs = 0.0; // higher node
        double h_ut = 0.0; // lower node
    };

    // One propagation hop (Tx->target, target->Rx, or Tx->Rx for the background).
    struct HopLink
    {
        NodeState from;
        NodeState to;
        LinkCondition condition = LinkCondition::NLOS;
        double d2d = 0.0;
        double d3d = 0.0;
        double path_loss_db = 0.0;
        double k_factor = 0.0; // linear; 0 for NLOS
        double shadow_fading_db = 0.0;

        NodeHeights heights() const
        {
            return {std::max(from.position.z, to.position.z), std::min(from.position.z, to.position.z)};
        }
    };

    enum class CombinationMode
    {
        TargetAddedToBackground,
        TargetEmbeddedInBackground,
    };

    struct CouplingConfig
    {
        double o_isac = 1.0;
        CombinationMode mode = CombinationMode::TargetAddedToBackground;
        // Embedded mode only: fraction of background paths treated as target-related and removed.
        double removal_fraction = 0.0;
    };

    // Probability of LOS for a 2D distance. UMi: 1 for d2D <= 18 m.
    double los_probability(const ScenarioParams &scenario, double d2d);

    // Hop path loss in dB. Breakpoint behaviour (UMi LOS) is applied only when heights are given.
    // Throws DomainError when d3D is outside the table's validity bounds.
    double hop_path_loss(const ScenarioParams &scenario, LinkCondition condition, double d3d, double frequency_hz,
                         std::optional<NodeHeights> heights = std::nullopt);

    // Bistatic radar-equation concatenation of two hop losses (dB), mean RCS in m^2:
    //   PL1 + PL2 + 10 log10(c^2 / (4 pi f^2)) - 10 log10(mean_rcs)
    double concatenated_path_loss(double pl1_db, double pl2_db, double frequency_hz, double mean_rcs_m2,
                                  double c = kSpeedOfLight);

    // Coupling-factor combination on linear scale. Added mode: target + O * background;
    // embedded mode: O * background (the target is part of the background set).
    double combine_isac_path_loss(double target_linear, double background_linear, const CouplingConfig &cfg);

    // Linear Ricean K for one hop; NLOS returns 0.
    double draw_k_factor(const ScenarioParams &scenario, LinkCondition condition, RandomStream &rng);

    // Geometry, condition (drawn or forced), path loss, shadow fading and K for one hop.
    HopLink make_hop(const NodeState &from, const NodeState &to, const ScenarioParams &scenario,
                     std::optional<LinkCondition> forced, const RngContext &ctx);
}
