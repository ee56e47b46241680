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
#include "isac/mat2.hpp"
#include "isac/rng.hpp"

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace isac
{
    enum class TargetClass
    {
        Human,
        Uav,
        Vehicle,
        Agv,
    };

    std::string_view to_string(TargetClass c);
    TargetClass parse_target_class(std::string_view s);

    // Angle-dependent RCS pattern. Empty table means constant 1.
    struct B1Pattern
    {
        std::vector<double> angle_deg; // strictly increasing
        std::vector<double> gain;      // linear, > 0

        bool is_constant() const { return angle_deg.empty(); }
        // Linear interpolation in degrees; throws DomainError outside the table.
        double at(double angle_deg) const;
    };

    // Text format: one "angle_deg gain" pair per line, '#' comments.
    B1Pattern parse_b1_table(std::string_view text, std::string_view source = "<b1>");
    B1Pattern load_b1_table(const std::string &path);

    // sigma = A * B1(angle) * B2, with B2 = 10^(x/10), x ~ N(mu_db, sigma_db^2).
    struct RcsModel
    {
        double a_m2 = 1.0; // large-scale mean, feeds the concatenated path loss
        B1Pattern b1;
        double mu_db = 0.0;
        double sigma_db = 0.0;
        TargetClass target_class = TargetClass::Human;

        void validate() const; // throws ConfigError
    };

    // The B1 lookup angle: incident azimuth at the target, degrees in (-180, 180].
    double b1_angle_deg(DirectionAngles incident);

    // A * B1 * B2.
    double sample_rcs(const RcsModel &model, DirectionAngles incident, RandomStream &rng);

    // B1 * B2 only: the per-path sigma of the small-scale coefficients. Draws exactly one
    // normal variate per call, also when sigma_db = 0, so stream positions stay aligned.
    double sample_small_scale_rcs(const RcsModel &model, DirectionAngles incident, RandomStream &rng);

    struct LognormalFit
    {
        double mu_db = 0.0;
        double sigma_db = 0.0;
    };

    // Mean and unbiased standard deviation of 10 log10(samples).
    LognormalFit fit_lognormal_db(const std::vector<double> &samples_m2);

    using MonoStaticRcs = std::function<double(double frequency_hz, double aspect_rad)>;

    struct MbetLimits
    {
        double max_beta_rad = 30.0 * kDeg;
        double warn_beta_rad = 20.0 * kDeg;
    };

    // Bi-static RCS approximated by the mono-static RCS at f cos(beta/2), evaluated at the
    // bisector aspect. Throws DomainError("MBET validity exceeded") beyond the bound; sets
    // *warned when |beta| is above the warning level.
    double mbet_bistatic(const MonoStaticRcs &mono, double frequency_hz, double aspect_rad, double beta_rad,
                         const MbetLimits &limits = {}, bool *warned = nullptr);

    struct ResolutionCell
    {
        double solid_angle_sr = 0.0;
        double range_m = 0.0;
        double pulse_width_s = 0.0;

        // Omega R^2 c tau / 2
        double volume(double c = kSpeedOfLight) const;
    };

    bool is_point_target(const ResolutionCell &cell, double target_extent_m3);

    enum class PolarizationMode
    {
        Identity, // {1, 0, 0, 1}
        Full,     // {a1, a2, a3, a4}
        Partial,  // {1, a2, a3, 1}
    };

    std::string_view to_string(PolarizationMode m);
    PolarizationMode parse_polarization_mode(std::string_view s);

    struct PolarizationScattering
    {
        PolarizationMode mode = PolarizationMode::Identity;
        std::array<double, 4> alphas{1.0, 0.0, 0.0, 1.0}; // VV, VH, HV, HH
        std::array<double, 4> phases{};                   // theta-theta, theta-phi, phi-theta, phi-phi
    };

    // Effective amplitudes of a mode: identity forces {1,0,0,1}, partial forces the diagonal to 1.
    std::array<double, 4> effective_alphas(PolarizationMode mode, const std::array<double, 4> &alphas);

    // One per-path scattering state. Identity mode draws nothing and keeps zero phases.
    PolarizationScattering draw_polarization_scattering(PolarizationMode mode, const std::array<double, 4> &alphas,
                                                        RandomStream &rng);

    // S = [[a_VV e^{j p_tt}, a_VH e^{j p_tp}], [a_HV e^{j p_pt}, a_HH e^{j p_pp}]]
    Mat2c scattering_matrix(const PolarizationScattering &ps);
}
