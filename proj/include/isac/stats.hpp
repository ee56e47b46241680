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

#include "isac/concatenation.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace isac
{
    enum class SpreadKind
    {
        ASA,
        ASD,
        ZSA,
        ZSD,
    };

    std::string_view to_string(SpreadKind k);

    // Power-weighted RMS delay spread, seconds.
    double weighted_delay_spread(std::span<const double> delays, std::span<const double> powers);

    // Circular azimuth spread in degrees: the weighted RMS minimized over the wrap point.
    double circular_angle_spread(std::span<const double> azimuths_rad, std::span<const double> powers);

    // Weighted RMS of zenith angles in degrees (no wrapping).
    double linear_angle_spread(std::span<const double> zeniths_rad, std::span<const double> powers);

    // Path powers used by the spreads: (prefactor * amplitude weight)^2.
    std::vector<double> path_powers(const TargetPathSet &paths);

    double delay_spread(const TargetPathSet &paths);
    double angle_spread(const TargetPathSet &paths, SpreadKind which);

    struct DropStatistics
    {
        double total_power = 0.0; // sum of path powers
        double ds = 0.0;          // seconds
        double asa = 0.0;         // degrees
        double asd = 0.0;
        double zsa = 0.0;
        double zsd = 0.0;
        ConcatCase concat_case = ConcatCase::Case0;
        ConditionPair condition = ConditionPair::NN;

        double spread(SpreadKind k) const;
    };

    DropStatistics drop_statistics(const TargetPathSet &paths);

    struct EmpiricalCdf
    {
        std::vector<double> values;        // sorted
        std::vector<double> probabilities; // i / n, i = 1..n

        // F(x) = fraction of samples <= x.
        double operator()(double x) const;
        double quantile(double p) const;
    };

    EmpiricalCdf empirical_cdf(std::vector<double> values); // throws DomainError when empty

    // Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
    double ks_statistic(const EmpiricalCdf &a, const EmpiricalCdf &b);
}
