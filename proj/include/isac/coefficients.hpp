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
#include "isac/mat2.hpp"
#include "isac/rcs.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace isac
{
    struct SnapshotGrid
    {
        double t0 = 0.0; // seconds
        double dt = 1e-3;
        int count = 1;

        double time(int i) const { return t0 + dt * double(i); }
        void validate() const; // throws ConfigError
        friend bool operator==(const SnapshotGrid &, const SnapshotGrid &) = default;
    };

    enum class SensingMode
    {
        Bistatic,
        Monostatic,
    };

    enum class Execution
    {
        Serial,   // direct evaluation, the reference
        Parallel, // OpenMP kernel over precomputed per-path terms
    };

    enum class PathOrigin : unsigned char
    {
        Target,
        Background,
    };

    // A path ready for coefficient synthesis. `amplitude` holds every real scalar factor
    // (prefactor, coupling weight, sqrt(sigma), large-scale gain).
    struct PathDescriptor
    {
        double delay = 0.0;
        double amplitude = 0.0;
        Mat2c polarization = Mat2c::identity();
        DirectionAngles tx_direction; // departure at the transmitter
        DirectionAngles rx_direction; // arrival at the receiver
        double doppler_hz = 0.0;
        PathOrigin origin = PathOrigin::Target;
        ConditionPair pair = ConditionPair::NN; // target paths only
        bool los = false;                       // background LOS ray
    };

    struct CirPathInfo
    {
        double delay = 0.0;
        double doppler_hz = 0.0;
        PathOrigin origin = PathOrigin::Target;
        ConditionPair pair = ConditionPair::NN;
        bool los = false;
    };

    // H[u][s][path][t], stored contiguously in that order.
    struct ChannelCir
    {
        std::size_t n_rx = 0;
        std::size_t n_tx = 0;
        SnapshotGrid grid;
        std::vector<CirPathInfo> paths;
        std::vector<cdouble> gains;
        std::optional<ConditionPair> link_condition;
        std::optional<KWeights> k_weights;

        std::size_t n_paths() const { return paths.size(); }
        std::size_t n_snapshots() const { return std::size_t(grid.count); }
        std::size_t index(std::size_t u, std::size_t s, std::size_t p, std::size_t t) const
        {
            return ((u * n_tx + s) * n_paths() + p) * n_snapshots() + t;
        }
        cdouble &at(std::size_t u, std::size_t s, std::size_t p, std::size_t t) { return gains[index(u, s, p, t)]; }
        const cdouble &at(std::size_t u, std::size_t s, std::size_t p, std::size_t t) const
        {
            return gains[index(u, s, p, t)];
        }
    };

    // diag(e^{j phi}, -e^{j phi})
    Mat2c los_polarization(double los_phase_rad);

    // [[e^{j p_tt}, k^-1/2 e^{j p_tp}], [k^-1/2 e^{j p_pt}, e^{j p_pp}]]; k = +inf gives a diagonal matrix.
    Mat2c xpr_polarization(const RayPolarization &ray);

    // Rx-side matrix * S * Tx-side matrix for the four condition pairs. The LOS phases are
    // -2 pi d3D / lambda of each hop. Throws DomainError when an NLOS side has no ray.
    Mat2c polarization_matrix(ConditionPair pair, const std::optional<RayPolarization> &tx_ray,
                              const std::optional<RayPolarization> &rx_ray, const Mat2c &s, double los_phase_tx,
                              double los_phase_rx);

    // (r_rx . v_rx + r_sp,out . v_sp + r_tx . v_tx + r_sp,in . v_sp) / lambda.
    // sp_in points from the target toward the Tx side, sp_out from the target toward the Rx side.
    double doppler_frequency(DirectionAngles tx_dir, DirectionAngles rx_dir, DirectionAngles sp_in,
                             DirectionAngles sp_out, Vec3 v_tx, Vec3 v_rx, Vec3 v_sp, double wavelength);

    struct PolarizationConfig
    {
        PolarizationMode mode = PolarizationMode::Identity;
        std::array<double, 4> alphas{1.0, 0.0, 0.0, 1.0};
    };

    // Per-path random terms (B2 and scattering phases) are drawn here, serially and in path
    // order, from the target streams of ctx.
    std::vector<PathDescriptor> target_path_descriptors(const TargetPathSet &paths, const NodeState &tx,
                                                        const NodeState &rx, const NodeState &target,
                                                        const RcsModel &rcs, const PolarizationConfig &pol,
                                                        double wavelength, const RngContext &ctx,
                                                        double amplitude_scale = 1.0);

    // Single-hop paths of a background sub-link, scaled by amplitude_scale.
    std::vector<PathDescriptor> background_path_descriptors(const SubLinkClusters &sublink, const NodeState &tx,
                                                            const NodeState &rx, double wavelength,
                                                            double amplitude_scale);

    // Coefficients for every (rx element, tx element, path, snapshot).
    ChannelCir synthesize_cir(const std::vector<PathDescriptor> &paths, const std::vector<AntennaElement> &tx_array,
                              const std::vector<AntennaElement> &rx_array, const SnapshotGrid &grid, double wavelength,
                              Execution exec = Execution::Parallel);

    ChannelCir synthesize_target_cir(const TargetPathSet &paths, const NodeState &tx, const NodeState &rx,
                                     const NodeState &target, const RcsModel &rcs, const PolarizationConfig &pol,
                                     const SnapshotGrid &grid, double wavelength, const RngContext &ctx,
                                     double amplitude_scale = 1.0, Execution exec = Execution::Parallel);

    struct BackgroundChannel
    {
        SubLinkClusters sublink;
        ChannelCir cir;
    };

    // Standard single-hop channel between Tx and Rx. Gains carry 10^(-(PL+SF)/20).
    // Mono-static mode throws UnsupportedFeature.
    BackgroundChannel synthesize_background_cir(const NodeState &tx, const NodeState &rx,
                                                const ScenarioParams &scenario, const SnapshotGrid &grid,
                                                const RngContext &ctx, SensingMode mode = SensingMode::Bistatic,
                                                std::optional<LinkCondition> forced = std::nullopt,
                                                const SmallScaleOptions &options = {},
                                                Execution exec = Execution::Parallel);

    // Target paths followed by the background paths scaled by sqrt(O_isac). Embedded mode
    // first drops the strongest removal_fraction of background paths.
    ChannelCir combine_channels(const ChannelCir &target, const ChannelCir &background, const CouplingConfig &cfg);

    // Sum of |h|^2 over elements and paths at one snapshot, optionally restricted to a pair.
    double cir_power(const ChannelCir &cir, std::size_t snapshot = 0,
                     std::optional<ConditionPair> only = std::nullopt);
}
