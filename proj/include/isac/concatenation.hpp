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

#include "isac/small_scale.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace isac
{
    // Coupling strategies for the NLOS-NLOS part of the target channel.
    //   CaseA   NLOS-NLOS paths only when both hops are NLOS (full convolution then)
    //   Case0   ray-level full convolution
    //   Case1   cluster-level full convolution, rays 1-by-1 within each cluster pair
    //   Case2O  clusters 1-by-1 in delay order, rays 1-by-1 in order
    //   Case2R  clusters 1-by-1 randomly, rays 1-by-1 randomly
    //   Case3   ray-level 1-by-1 random coupling of the pooled rays
    //   *N      same pairing, NLOS-NLOS weights renormalized to unit total power
    enum class ConcatCase : std::uint8_t
    {
        CaseA,
        Case0,
        Case1,
        Case2O,
        Case2R,
        Case3,
        Case1N,
        Case2ON,
        Case2RN,
        Case3N,
    };

    inline constexpr std::array<ConcatCase, 10> kAllConcatCases = {
        ConcatCase::CaseA, ConcatCase::Case0, ConcatCase::Case1, ConcatCase::Case2O, ConcatCase::Case2R,
        ConcatCase::Case3, ConcatCase::Case1N, ConcatCase::Case2ON, ConcatCase::Case2RN, ConcatCase::Case3N};

    std::string_view to_string(ConcatCase c);
    ConcatCase parse_concat_case(std::string_view name); // throws ConfigError
    bool is_normalized(ConcatCase c);
    ConcatCase base_case(ConcatCase c); // strips the N suffix

    // Propagation condition of the (Tx->target, target->Rx) pair of a path or of a drop.
    enum class ConditionPair : std::uint8_t
    {
        LL,
        LN,
        NL,
        NN,
    };

    std::string_view to_string(ConditionPair p);
    ConditionPair parse_condition_pair(std::string_view s);
    ConditionPair condition_pair(LinkCondition tx, LinkCondition rx);

    struct RayRef
    {
        std::uint32_t cluster = 0;
        std::uint32_t ray = 0;
        friend bool operator==(const RayRef &, const RayRef &) = default;
    };

    // Polarization state carried from a hop ray into a coupled path.
    struct RayPolarization
    {
        double xpr = 0.0;
        std::array<double, 4> phases{};
    };

    struct ConcatenatedPath
    {
        double joint_delay = 0.0;      // seconds
        double amplitude_weight = 0.0; // excludes the K-factor prefactor
        DirectionAngles tx_departure;  // at Tx
        DirectionAngles rx_arrival;    // at Rx
        DirectionAngles target_arrival;   // at the target, from the Tx side
        DirectionAngles target_departure; // at the target, toward the Rx side
        std::optional<RayRef> tx_ray;  // absent when the Tx side is the LOS ray
        std::optional<RayRef> rx_ray;
        RayPolarization tx_pol;
        RayPolarization rx_pol;
        ConditionPair pair = ConditionPair::NN;
    };

    // The four amplitude prefactors sqrt(K/(K+1)), sqrt(1/(K+1)) combinations.
    struct KWeights
    {
        double ll = 0.0;
        double ln = 0.0;
        double nl = 0.0;
        double nn = 1.0;

        double of(ConditionPair p) const
        {
            switch (p)
            {
            case ConditionPair::LL:
                return ll;
            case ConditionPair::LN:
                return ln;
            case ConditionPair::NL:
                return nl;
            case ConditionPair::NN:
                return nn;
            }
            return 0.0;
        }
    };

    // Handles K = +inf (pure specular) and K = 0.
    KWeights k_weights(double k_tx, double k_rx);

    struct TargetPathSet
    {
        std::vector<ConcatenatedPath> paths;
        KWeights k_weights;
        bool normalization_applied = false;
        ConcatCase concat_case = ConcatCase::Case0;
        ConditionPair link_condition = ConditionPair::NN;
        double los_distance_tx = 0.0; // d3D of the Tx->target hop
        double los_distance_rx = 0.0; // d3D of the target->Rx hop
    };

    // Couples the two hops. rng is consumed only by Case2R/Case3 (and their N variants).
    TargetPathSet concatenate(const SubLinkClusters &tx, const SubLinkClusters &rx, ConcatCase concat_case,
                              RandomStream &rng);

    // Sum of squared amplitude weights over NLOS-NLOS paths.
    double nn_total_power(const TargetPathSet &paths);

    // Count of paths with a given condition pair.
    std::size_t count_paths(const TargetPathSet &paths, ConditionPair pair);
}
