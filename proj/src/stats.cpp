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

#include "isac/stats.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace isac
{
    namespace
    {
        void check_inputs(std::span<const double> x, std::span<const double> w, const char *what)
        {
            if (x.size() != w.size())
                throw DomainError(std::string(what) + ": size mismatch");
            if (x.empty())
                throw DomainError(std::string(what) + ": empty path set");
            double total = 0.0;
            for (double v : w)
            {
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw DomainError(std::string(what) + ": weights must be finite and nonnegative");
                total += v;
            }
            if (!(total > 0.0))
                throw DomainError(std::string(what) + ": no path with positive weight");
        }

        // Two-pass weighted RMS of x about its weighted mean, each x shifted by `ref` first so
        // identical inputs give exactly zero.
        template <typename Get>
        double weighted_rms(std::size_t n, Get get, std::span<const double> w)
        {
            double sw = 0.0, sx = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                sw += w[i];
                sx += w[i] * get(i);
            }
            const double mean = sx / sw;
            double sv = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double d = get(i) - mean;
                sv += w[i] * d * d;
            }
            return std::sqrt(sv / sw);
        }
    }

    std::string_view to_string(SpreadKind k)
    {
        switch (k)
        {
        case SpreadKind::ASA:
            return "ASA";
        case SpreadKind::ASD:
            return "ASD";
        case SpreadKind::ZSA:
            return "ZSA";
        case SpreadKind::ZSD:
            return "ZSD";
        }
        return "?";
    }

    double weighted_delay_spread(std::span<const double> tau, std::span<const double> w)
    {
        check_inputs(tau, w, "delay_spread");
        const double ref = tau[0];
        return weighted_rms(tau.size(), [&](std::size_t i) { return tau[i] - ref; }, w);
    }

    double linear_angle_spread(std::span<const double> zen, std::span<const double> w)
    {
        check_inputs(zen, w, "angle_spread");
        const double ref = zen[0];
        return weighted_rms(zen.size(), [&](std::size_t i) { return zen[i] - ref; }, w) / kDeg;
    }

    double circular_angle_spread(std::span<const double> az, std::span<const double> w)
    {
        check_inputs(az, w, "angle_spread");
        const std::size_t n = az.size();
        // Sort by wrapped angle; offsets relative to the smallest angle lie in [0, 2 pi).
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::vector<double> a(n);
        for (std::size_t i = 0; i < n; ++i)
            a[i] = wrap_azimuth(az[i]);
        std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return a[x] < a[y]; });
        std::vector<double> x(n), ws(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            x[i] = a[idx[i]] - a[idx[0]];
            ws[i] = w[idx[i]];
        }

        // Cut k moves x[0..k) up by 2 pi. Weighted variance from running sums, O(n) overall;
        // the winning cut is re-evaluated with the two-pass formula.
        const double two_pi = 2.0 * kPi;
        double sw = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            sw += ws[i];
            s1 += ws[i] * x[i];
            s2 += ws[i] * x[i] * x[i];
        }
        std::size_t best = 0;
        double best_var = s2 / sw - (s1 / sw) * (s1 / sw);
        for (std::size_t k = 1; k < n; ++k)
        {
            const double xi = x[k - 1], wi = ws[k - 1];
            const double xn = xi + two_pi;
            s1 += wi * (xn - xi);
            s2 += wi * (xn * xn - xi * xi);
            const double var = s2 / sw - (s1 / sw) * (s1 / sw);
            if (var < best_var - 1e-12)
            {
                best_var = var;
                best = k;
            }
        }
        auto value = [&](std::size_t i) { return i < best ? x[i] + two_pi - x[best] : x[i] - x[best]; };
        return weighted_rms(n, value, ws) / kDeg;
    }

    std::vector<double> path_powers(const TargetPathSet &set)
    {
        std::vector<double> w(set.paths.size());
        for (std::size_t i = 0; i < w.size(); ++i)
        {
            const double a = set.k_weights.of(set.paths[i].pair) * set.paths[i].amplitude_weight;
            w[i] = a * a;
        }
        return w;
    }

    double delay_spread(const TargetPathSet &set)
    {
        std::vector<double> tau(set.paths.size());
        for (std::size_t i = 0; i < tau.size(); ++i)
            tau[i] = set.paths[i].joint_delay;
        return weighted_delay_spread(tau, path_powers(set));
    }

    double angle_spread(const TargetPathSet &set, SpreadKind which)
    {
        std::vector<double> v(set.paths.size());
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            const auto &p = set.paths[i];
            switch (which)
            {
            case SpreadKind::ASA:
                v[i] = p.rx_arrival.azimuth;
                break;
            case SpreadKind::ASD:
                v[i] = p.tx_departure.azimuth;
                break;
            case SpreadKind::ZSA:
                v[i] = p.rx_arrival.zenith;
                break;
            case SpreadKind::ZSD:
                v[i] = p.tx_departure.zenith;
                break;
            }
        }
        const auto w = path_powers(set);
        return which == SpreadKind::ASA || which == SpreadKind::ASD ? circular_angle_spread(v, w)
                                                                    : linear_angle_spread(v, w);
    }

    double DropStatistics::spread(SpreadKind k) const
    {
        switch (k)
        {
        case SpreadKind::ASA:
            return asa;
        case SpreadKind::ASD:
            return asd;
        case SpreadKind::ZSA:
            return zsa;
        case SpreadKind::ZSD:
            return zsd;
        }
        return 0.0;
    }

    DropStatistics drop_statistics(const TargetPathSet &set)
    {
        DropStatistics s;
        const auto w = path_powers(set);
        s.total_power = std::accumulate(w.begin(), w.end(), 0.0);
        s.ds = delay_spread(set);
        s.asa = angle_spread(set, SpreadKind::ASA);
        s.asd = angle_spread(set, SpreadKind::ASD);
        s.zsa = angle_spread(set, SpreadKind::ZSA);
        s.zsd = angle_spread(set, SpreadKind::ZSD);
        s.concat_case = set.concat_case;
        s.condition = set.link_condition;
        return s;
    }

    double EmpiricalCdf::operator()(double x) const
    {
        const auto k = std::upper_bound(values.begin(), values.end(), x) - values.begin();
        return values.empty() ? 0.0 : double(k) / double(values.size());
    }

    double EmpiricalCdf::quantile(double p) const
    {
        if (values.empty() || !(p >= 0.0 && p <= 1.0))
            throw DomainError("quantile: empty CDF or p outside [0, 1]");
        const auto n = values.size();
        const auto k = std::size_t(std::ceil(p * double(n)));
        return values[k == 0 ? 0 : k - 1];
    }

    EmpiricalCdf empirical_cdf(std::vector<double> values)
    {
        if (values.empty())
            throw DomainError("empirical_cdf: empty sample");
        for (double v : values)
            if (std::isnan(v))
                throw DomainError("empirical_cdf: NaN sample");
        std::sort(values.begin(), values.end());
        EmpiricalCdf c;
        c.probabilities.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            c.probabilities[i] = double(i + 1) / double(values.size());
        c.values = std::move(values);
        return c;
    }

    double ks_statistic(const EmpiricalCdf &a, const EmpiricalCdf &b)
    {
        if (a.values.empty() || b.values.empty())
            throw DomainError("ks_statistic: empty CDF");
        const double na = double(a.values.size()), nb = double(b.values.size());
        std::size_t i = 0, j = 0;
        double d = 0.0;
        while (i < a.values.size() && j < b.values.size())
        {
            const double x = std::min(a.values[i], b.values[j]);
            while (i < a.values.size() && a.values[i] == x)
                ++i;
            while (j < b.values.size() && b.values[j] == x)
                ++j;
            d = std::max(d, std::abs(double(i) / na - double(j) / nb));
        }
        return d;
    }
}
