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

#include "isac/large_scale.hpp"

#include <array>
#include <optional>
#include <vector>

namespace isac
{
    // One ray (sub-path) of a hop.
    struct Ray
    {
        double delay = 0.0;            // seconds, relative to the hop's first arrival
        double amplitude_weight = 0.0; // sqrt(P_cluster / M_cluster); 1 for the LOS ray
        DirectionAngles departure;
        DirectionAngles arrival;
        double xpr = 0.0;                  // linear; +inf for the LOS ray
        std::array<double, 4> phases{};    // {theta-theta, theta-phi, phi-theta, phi-phi}, (-pi, pi]
    };

    struct Cluster
    {
        int index = 0;      // position in generation order (delay-sorted before splitting)
        double power = 0.0; // linear, NLOS part normalized to unit sum
        double delay = 0.0; // seconds
        std::vector<Ray> rays;
    };

    // Per-hop large-scale draws used by the cluster generator.
    struct LargeScaleDraw
    {
        double ds = 0.0; // seconds
        double asd_deg = 0.0;
        double asa_deg = 0.0;
        double zsd_deg = 0.0;
        double zsa_deg = 0.0;
        double lg_zsd_mu = 0.0;
        double zod_offset_deg = 0.0;
    };

    struct SubLinkClusters
    {
        HopLink hop;
        std::optional<Ray> los_ray; // present iff hop.condition == LOS
        std::vector<Cluster> clusters;
        LargeScaleDraw lsp;
        double absolute_delay = 0.0; // seconds added to every delay (0 in relative-delay mode)
    };

    struct SmallScaleOptions
    {
        bool subcluster_split = false;   // split the two strongest clusters into three sub-clusters
        bool absolute_delay = false;     // add d3D/c to every delay of the hop
        bool nlos_excess_delay = false;  // NLOS hops: add the log-normal excess delay of the first path
        int rays_per_cluster = 0;        // 0 = table value
    };

    // Intra-cluster angle offsets with unit RMS. M = 20 returns the standard table; other M use
    // Laplacian quantiles rescaled to unit RMS.
    std::vector<double> ray_offsets(int rays);

    // Cluster/ray structure of one hop: delays, powers, angles, XPR and phases.
    SubLinkClusters generate_sublink(const HopLink &hop, const ScenarioParams &scenario, const RngContext &ctx,
                                     const SmallScaleOptions &options = {});

    // Target->Rx hop obtained from a Tx->target hop by reciprocity (departure and arrival
    // swapped, cross-polar phases transposed, everything else kept).
    SubLinkClusters mono_static_reciprocal(const SubLinkClusters &sublink);

    // Sum of cluster powers (the NLOS part).
    double total_cluster_power(const SubLinkClusters &sublink);
}
