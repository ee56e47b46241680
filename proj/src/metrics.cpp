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

#include "isac/metrics.hpp"

#include "isac/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isac
{
    void WaveformParams::validate() const
    {
        if (!(pulse_width_s > 0.0) || !(pri_s > 0.0) || pulses < 1 || !(wavelength_m > 0.0) ||
            !(element_spacing_m > 0.0) || elements < 1)
            throw DomainError("waveform parameters must be positive");
        if (pri_s < pulse_width_s)
            throw DomainError("waveform: PRI must not be shorter than the pulse width");
    }

    RangeMetrics range_metrics(const WaveformParams &w, double t_r, double dt_r, double dc)
    {
        w.validate();
        if (t_r < 0.0)
            throw DomainError("range_metrics: round-trip time must be nonnegative");
        const double c = kSpeedOfLight;
        RangeMetrics m;
        m.range = c * t_r / 2.0;
        m.error = c * dt_r / 2.0 + (m.range / c) * dc;
        m.resolution = c * w.pulse_width_s / 2.0;
        m.max_unambiguous = c * w.pri_s / 2.0;
        return m;
    }

    SpeedMetrics speed_metrics(const WaveformParams &w, double fd, double dfd)
    {
        w.validate();
        const double l = w.wavelength_m;
        return {l * fd / 2.0, l * dfd / 2.0, l / (2.0 * double(w.pulses) * w.pri_s)};
    }

    AngleMetrics angle_metrics(const WaveformParams &w, double phase, double dphase, double theta)
    {
        w.validate();
        const double l = w.wavelength_m, d = w.element_spacing_m;
        const double arg = phase * l / (2.0 * kPi * d);
        if (std::abs(arg) > 1.0)
            throw DomainError("angle_metrics: phase " + std::to_string(phase) +
                              " rad is ambiguous for this spacing (|sin(theta)| would exceed 1)");
        const double c = std::cos(theta);
        if (std::abs(c) < 1e-15)
            throw DomainError("angle_metrics: singular at cos(theta) = 0");
        AngleMetrics m;
        m.estimate = std::asin(arg);
        m.error = l * dphase / (2.0 * kPi * d * c);
        m.resolution = l / (double(w.elements) * d * c);
        m.max_unambiguous = std::asin(std::min(1.0, l / (2.0 * d)));
        return m;
    }

    void DetectionParams::validate() const
    {
        if (!(noise_std > 0.0) || !std::isfinite(noise_std))
            throw DomainError("detection: noise standard deviation must be positive");
        if (!(threshold >= 0.0) || !(amplitude >= 0.0) || std::isnan(threshold))
            throw DomainError("detection: threshold and amplitude must be nonnegative");
    }

    double pfa(const DetectionParams &p)
    {
        p.validate();
        const double v = p.threshold / p.noise_std;
        return std::exp(-0.5 * v * v);
    }

    double threshold_for_pfa(double target, double sigma)
    {
        if (!(target > 0.0 && target <= 1.0))
            throw DomainError("threshold_for_pfa: target probability must lie in (0, 1]");
        if (!(sigma > 0.0))
            throw DomainError("threshold_for_pfa: noise standard deviation must be positive");
        return std::sqrt(-2.0 * std::log(target)) * sigma;
    }

    double bessel_i0_scaled(double z)
    {
        if (z < 0.0)
            z = -z;
        if (z <= 30.0)
        {
            // sum (z^2/4)^k / (k!)^2
            const double q = 0.25 * z * z;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 500; ++k)
            {
                term *= q / (double(k) * double(k));
                sum += term;
                if (term < sum * 1e-17)
                    break;
            }
            return sum * std::exp(-z);
        }
        // 1/sqrt(2 pi z) * sum_k ((2k-1)!!)^2 / (k! (8z)^k)
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (double(k) * 8.0 * z);
            if (next > term)
                break; // asymptotic series starts to diverge
            term = next;
            sum += term;
            if (term < sum * 1e-17)
                break;
        }
        return sum / std::sqrt(2.0 * kPi * z);
    }

    double pd(const DetectionParams &p)
    {
        p.validate();
        // Normalized units: u = x / sigma, a = A / sigma, v = V_T / sigma.
        const double a = p.amplitude / p.noise_std;
        const double v = p.threshold / p.noise_std;
        // The density is below 1e-30 past a + 12 (or v + 12); the tail there is negligible.
        const double hi = std::max(a, v) + 12.0;
        auto density = [a](double u)
        {
            const double d = u - a;
            return u * std::exp(-0.5 * d * d) * bessel_i0_scaled(a * u);
        };

        double err = 0.0;
        double total = 0.0;
        // Split at the peak so the adaptive rule sees a smooth bump on each side. The relative
        // tolerance must stay above rounding level, otherwise short pieces recurse to full depth
        // and accumulate rounding noise in the error estimate.
        const double mid = std::clamp(a, v, hi);
        for (auto [lo, up] : {std::pair{v, mid}, std::pair{mid, hi}})
        {
            if (up <= lo)
                continue;
            double e = 0.0;
            total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(density, lo, up, 20, 1e-12, &e);
            err += e;
        }
        if (!std::isfinite(total) || err > 1e-11)
        {
            std::ostringstream os;
            os << "pd: quadrature did not converge (A/sigma=" << a << ", V_T/sigma=" << v << ", estimate=" << total
               << ", error=" << err << ")";
            throw NumericError(os.str());
        }
        return std::clamp(total, 0.0, 1.0);
    }

    double snr_linear(const DetectionParams &p)
    {
        p.validate();
        return p.amplitude * p.amplitude / (2.0 * p.noise_std * p.noise_std);
    }

    double amplitude_for_snr_db(double snr_db, double sigma)
    {
        return sigma * std::sqrt(2.0 * std::pow(10.0, snr_db / 10.0));
    }
}
