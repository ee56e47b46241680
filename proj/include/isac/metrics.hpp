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

namespace isac
{
    struct WaveformParams
    {
        double pulse_width_s = 1e-6;  // t_tau
        double pri_s = 1e-3;          // T_R
        int pulses = 1;               // M
        double wavelength_m = 0.05;
        double element_spacing_m = 0.025; // d
        int elements = 1;                 // N

        void validate() const; // throws DomainError
    };

    struct RangeMetrics
    {
        double range = 0.0;      // c t_R / 2
        double error = 0.0;      // c dt_R / 2 + (R / c) dc
        double resolution = 0.0; // c t_tau / 2
        double max_unambiguous = 0.0; // c T_R / 2
    };

    RangeMetrics range_metrics(const WaveformParams &w, double round_trip_s, double round_trip_error_s,
                               double light_speed_error = 0.0);

    struct SpeedMetrics
    {
        double speed = 0.0;      // lambda f_d / 2
        double error = 0.0;      // lambda df_d / 2
        double resolution = 0.0; // lambda / (2 M T_R)
    };

    SpeedMetrics speed_metrics(const WaveformParams &w, double doppler_hz, double doppler_error_hz);

    struct AngleMetrics
    {
        double estimate = 0.0;   // arcsin(phase lambda / (2 pi d))
        double error = 0.0;      // lambda dphase / (2 pi d cos theta)
        double resolution = 0.0; // lambda / (N d cos theta)
        double max_unambiguous = 0.0; // arcsin(lambda / (2 d)), pi/2 when d <= lambda/2
    };

    // Throws DomainError for an out-of-range arcsin argument (ambiguity) or cos(theta) = 0.
    AngleMetrics angle_metrics(const WaveformParams &w, double phase_rad, double phase_error_rad, double theta_rad);

    struct DetectionParams
    {
        double noise_std = 1.0; // sigma
        double threshold = 0.0; // V_T
        double amplitude = 0.0; // A

        void validate() const; // throws DomainError
    };

    // exp(-V_T^2 / (2 sigma^2))
    double pfa(const DetectionParams &p);

    // sqrt(-2 ln pfa) sigma; throws DomainError unless 0 < pfa <= 1.
    double threshold_for_pfa(double target_pfa, double noise_std);

    // Integral of the Rician envelope density (x / sigma^2) exp(-(A^2 + x^2) / (2 sigma^2)) I0(A x / sigma^2)
    // from V_T to infinity, by adaptive Gauss-Kronrod quadrature. Throws NumericError when the
    // error estimate stays above tolerance.
    double pd(const DetectionParams &p);

    // SNR convention of the detection tables: A^2 / (2 sigma^2).
    double snr_linear(const DetectionParams &p);
    double amplitude_for_snr_db(double snr_db, double noise_std);

    // exp(-z) I0(z) for z >= 0: power series below 30, asymptotic expansion above.
    double bessel_i0_scaled(double z);
}
