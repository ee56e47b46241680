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

// Independent reference computations used by the tests. None of these call into the
// library's implementation of the quantity they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle
{
    inline constexpr double pi = std::numbers::pi;

    // UMi LOS path loss below the breakpoint, hand formula.
    inline double umi_los_db(double d3d, double f_ghz) { return 32.4 + 21.0 * std::log10(d3d) + 20.0 * std::log10(f_ghz); }

    // 10 log10(c^2 / (4 pi f^2)) with c = 3e8.
    inline double free_space_constant_db(double f_hz)
    {
        const double lambda = 3e8 / f_hz;
        return 10.0 * std::log10(lambda * lambda / (4.0 * pi));
    }

    // Circular angle spread by brute force: scan the origin shift on a fine grid, wrap every
    // angle into [-pi, pi) around the shift, take the weighted RMS, keep the minimum. Degrees.
    inline double circular_spread_scan(const std::vector<double> &az, const std::vector<double> &w, int steps = 7200)
    {
        double best = 1e300;
        // Also try shifts that put each sample exactly at the centre, so the grid cannot miss the optimum.
        std::vector<double> shifts;
        for (int k = 0; k < steps; ++k)
            shifts.push_back(-pi + 2.0 * pi * k / steps);
        for (double a : az)
            shifts.push_back(a + pi);
        for (double d : shifts)
        {
            double sw = 0, s1 = 0, s2 = 0;
            for (std::size_t i = 0; i < az.size(); ++i)
            {
                double x = std::remainder(az[i] - d, 2.0 * pi);
                sw += w[i];
                s1 += w[i] * x;
                s2 += w[i] * x * x;
            }
            const double mean = s1 / sw;
            double v = 0;
            for (std::size_t i = 0; i < az.size(); ++i)
            {
                double x = std::remainder(az[i] - d, 2.0 * pi);
                v += w[i] * (x - mean) * (x - mean);
            }
            best = std::min(best, std::sqrt(v / sw));
        }
        return best * 180.0 / pi;
    }

    // Two-sample KS statistic by evaluating both step functions at every sample point.
    inline double ks_bruteforce(const std::vector<double> &a, const std::vector<double> &b)
    {
        auto F = [](const std::vector<double> &s, double x)
        {
            return double(std::count_if(s.begin(), s.end(), [&](double v) { return v <= x; })) / double(s.size());
        };
        double d = 0;
        for (double x : a)
            d = std::max(d, std::abs(F(a, x) - F(b, x)));
        for (double x : b)
            d = std::max(d, std::abs(F(a, x) - F(b, x)));
        return d;
    }

    // exp(-z) I0(z) by trapezoidal quadrature of (1/pi) int_0^pi exp(z (cos t - 1)) dt,
    // exponentially accurate for this periodic integrand.
    inline double i0e_trapezoid(double z, int n = 4000)
    {
        double s = 0.5 * (1.0 + std::exp(-2.0 * z));
        for (int k = 1; k < n; ++k)
            s += std::exp(z * (std::cos(pi * k / n) - 1.0));
        return s / n;
    }
}
