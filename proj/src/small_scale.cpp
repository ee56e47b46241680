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

#include "isac/small_scale.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace isac
{
    namespace
    {
        constexpr std::array<double, 20> kStandardOffsets = {
            0.0447, -0.0447, 0.1413, -0.1413, 0.2492, -0.2492, 0.3715, -0.3715, 0.5129, -0.5129,
            0.6797, -0.6797, 0.8844, -0.8844, 1.1481, -1.1481, 1.5195, -1.5195, 2.1551, -2.1551};

        // Scaling factors for the inverse-Gaussian azimuth and Laplacian zenith mappings,
        // indexed by cluster count; linear interpolation between tabulated counts.
        const std::map<int, double> kAzimuthScaling = {{4, 0.779}, {5, 0.860}, {8, 1.018}, {10, 1.090}, {11, 1.123}, {12, 1.146},
                                                       {14, 1.190}, {15, 1.211}, {16, 1.226}, {19, 1.273}, {20, 1.289}, {25, 1.358}};
        const std::map<int, double> kZenithScaling = {{8, 0.889}, {10, 0.957}, {11, 1.031}, {12, 1.104},
                                                      {15, 1.1088}, {19, 1.184}, {20, 1.178}, {25, 1.282}};

        double lookup(const std::map<int, double> &table, int n)
        {
            auto hi = table.lower_bound(n);
            if (hi == table.end())
                return std::prev(hi)->second;
            if (hi->first == n || hi == table.begin())
                return hi->second;
            auto lo = std::prev(hi);
            const double t = double(n - lo->first) / double(hi->first - lo->first);
            return lo->second + t * (hi->second - lo->second);
        }

        double wrap_deg(double deg) { return wrap_azimuth(deg * kDeg) / kDeg; }

        // Zenith angles folded into [0, 180] degrees.
        double fold_zenith_deg(double deg)
        {
            double z = std::fmod(deg, 360.0);
            if (z < 0.0)
                z += 360.0;
            return z > 180.0 ? 360.0 - z : z;
        }

        double draw_lognormal10(RandomStream &s, double mu, double sigma) { return std::pow(10.0, s.normal(mu, sigma)); }

        // Per-cluster mean angles (degrees), one of the four angle families.
        std::vector<double> cluster_angles(RandomStream &s, const std::vector<double> &pow_ang, double spread_deg,
                                           double los_deg, bool los, double k_db, int n, bool azimuth, double offset_deg)
        {
            const double pmax = *std::max_element(pow_ang.begin(), pow_ang.end());
            std::vector<double> base(n), out(n);
            if (azimuth)
            {
                double c = lookup(kAzimuthScaling, n);
                if (los)
                    c *= 1.1035 - 0.028 * k_db - 0.002 * k_db * k_db + 0.0001 * k_db * k_db * k_db;
                for (int i = 0; i < n; ++i)
                    base[i] = 2.0 * (spread_deg / 1.4) * std::sqrt(-std::log(pow_ang[i] / pmax)) / c;
            }
            else
            {
                double c = lookup(kZenithScaling, n);
                if (los)
                    c *= 1.3086 + 0.0339 * k_db - 0.0077 * k_db * k_db + 0.0002 * k_db * k_db * k_db;
                for (int i = 0; i < n; ++i)
                    base[i] = -spread_deg * std::log(pow_ang[i] / pmax) / c;
            }
            for (int i = 0; i < n; ++i)
            {
                const double x = s.sign();
                const double y = s.normal(0.0, spread_deg / 7.0);
                out[i] = x * base[i] + y;
            }
            if (los)
            {
                const double first = out[0];
                for (auto &v : out)
                    v = v - first + los_deg;
            }
            else
            {
                for (auto &v : out)
                    v += los_deg + offset_deg;
            }
            return out;
        }
    }

    std::vector<double> ray_offsets(int rays)
    {
        if (rays <= 0)
            throw ConfigError("rays per cluster must be positive");
        if (rays == 20)
            return {kStandardOffsets.begin(), kStandardOffsets.end()};
        if (rays == 1)
            return {0.0};
        // Symmetric Laplacian quantiles; interleaved +/- like the standard table.
        std::vector<double> mags;
        for (int k = 0; k < rays; ++k)
        {
            const double p = (k + 0.5) / rays;
            const double q = p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
            mags.push_back(q);
        }
        double rms = 0.0;
        for (double v : mags)
            rms += v * v;
        rms = std::sqrt(rms / rays);
        std::sort(mags.begin(), mags.end(), [](double a, double b)
                  { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a > b); });
        for (auto &v : mags)
            v /= rms;
        return mags;
    }

    SubLinkClusters generate_sublink(const HopLink &hop, const ScenarioParams &scenario, const RngContext &ctx,
                                     const SmallScaleOptions &options)
    {
        const auto &p = scenario.at(hop.condition);
        const bool los = hop.condition == LinkCondition::LOS;
        const double fc = scenario.fc_ghz();
        const int n = p.clusters;
        const int m = options.rays_per_cluster > 0 ? options.rays_per_cluster : p.rays_per_cluster;
        if (n <= 0 || m <= 0)
            throw ConfigError("invalid scenario table: cluster and ray counts must be positive");
        if (options.subcluster_split && m != 20)
            throw ConfigError("sub-cluster splitting requires 20 rays per cluster");
        if (los && !(hop.k_factor > 0.0))
            throw DomainError("generate_sublink: LOS hop requires a positive K-factor");

        SubLinkClusters out;
        out.hop = hop;

        // Large-scale parameters
        auto lsp_rng = ctx.stream(RngTag::LargeScaleParams);
        const NodeHeights h = hop.heights();
        out.lsp.ds = draw_lognormal10(lsp_rng, p.lg_ds_mu.at(fc), p.lg_ds_sigma.at(fc));
        out.lsp.asd_deg = std::min(draw_lognormal10(lsp_rng, p.lg_asd_mu.at(fc), p.lg_asd_sigma.at(fc)), 104.0);
        out.lsp.asa_deg = std::min(draw_lognormal10(lsp_rng, p.lg_asa_mu.at(fc), p.lg_asa_sigma.at(fc)), 104.0);
        out.lsp.zsa_deg = std::min(draw_lognormal10(lsp_rng, p.lg_zsa_mu.at(fc), p.lg_zsa_sigma.at(fc)), 52.0);
        out.lsp.lg_zsd_mu = p.lg_zsd_mu.at(hop.d2d, h.h_bs - h.h_ut);
        out.lsp.zsd_deg = std::min(draw_lognormal10(lsp_rng, out.lsp.lg_zsd_mu, p.lg_zsd_sigma), 52.0);
        out.lsp.zod_offset_deg = p.zod_offset_deg(hop.d2d);
        const double k_db = los ? 10.0 * std::log10(hop.k_factor) : 0.0;

        // Delays
        auto delay_rng = ctx.stream(RngTag::ClusterDelays);
        std::vector<double> tau(n);
        for (auto &t : tau)
            t = -p.r_tau * out.lsp.ds * std::log(delay_rng.uniform_open());
        std::sort(tau.begin(), tau.end());
        const double tmin = tau.front();
        for (auto &t : tau)
            t -= tmin;

        // Powers (NLOS part normalized to unit sum)
        auto power_rng = ctx.stream(RngTag::ClusterPowers);
        std::vector<double> pw(n);
        for (int i = 0; i < n; ++i)
        {
            const double z = power_rng.normal(0.0, p.cluster_shadow_db);
            pw[i] = std::exp(-tau[i] * (p.r_tau - 1.0) / (p.r_tau * out.lsp.ds)) * std::pow(10.0, -z / 10.0);
        }
        const double psum = std::accumulate(pw.begin(), pw.end(), 0.0);
        for (auto &v : pw)
            v /= psum;

        if (los)
        {
            const double c_tau = 0.7705 - 0.0433 * k_db + 0.0002 * k_db * k_db + 0.000017 * k_db * k_db * k_db;
            for (auto &t : tau)
                t /= c_tau;
        }

        // Powers used for angle mapping include the specular component.
        std::vector<double> pang = pw;
        if (los)
        {
            const double k = hop.k_factor;
            for (auto &v : pang)
                v /= (k + 1.0);
            pang[0] += k / (k + 1.0);
        }

        const DirectionAngles aod_los = angles_between(hop.from.position, hop.to.position);
        const DirectionAngles aoa_los = angles_between(hop.to.position, hop.from.position);

        auto az_rng = ctx.stream(RngTag::Azimuths);
        const auto aoa = cluster_angles(az_rng, pang, out.lsp.asa_deg, aoa_los.azimuth / kDeg, los, k_db, n, true, 0.0);
        const auto aod = cluster_angles(az_rng, pang, out.lsp.asd_deg, aod_los.azimuth / kDeg, los, k_db, n, true, 0.0);
        auto zen_rng = ctx.stream(RngTag::Zeniths);
        const auto zoa = cluster_angles(zen_rng, pang, out.lsp.zsa_deg, aoa_los.zenith / kDeg, los, k_db, n, false, 0.0);
        const auto zod = cluster_angles(zen_rng, pang, out.lsp.zsd_deg, aod_los.zenith / kDeg, los, k_db, n, false,
                                        out.lsp.zod_offset_deg);

        const auto alpha = ray_offsets(m);
        const double c_zsd = 0.375 * std::pow(10.0, out.lsp.lg_zsd_mu);
        auto couple_rng = ctx.stream(RngTag::RayCoupling);
        auto xpr_rng = ctx.stream(RngTag::Xpr);
        auto phase_rng = ctx.stream(RngTag::Phases);

        std::vector<int> perm_aod(m), perm_zoa(m), perm_zod(m);
        out.clusters.reserve(n + (options.subcluster_split ? 4 : 0));
        for (int i = 0; i < n; ++i)
        {
            std::iota(perm_aod.begin(), perm_aod.end(), 0);
            std::iota(perm_zoa.begin(), perm_zoa.end(), 0);
            std::iota(perm_zod.begin(), perm_zod.end(), 0);
            couple_rng.shuffle(std::span<int>(perm_aod));
            couple_rng.shuffle(std::span<int>(perm_zoa));
            couple_rng.shuffle(std::span<int>(perm_zod));

            Cluster c;
            c.index = i;
            c.power = pw[i];
            c.delay = tau[i];
            c.rays.resize(m);
            for (int r = 0; r < m; ++r)
            {
                Ray &ray = c.rays[r];
                ray.delay = tau[i];
                ray.amplitude_weight = std::sqrt(pw[i] / m);
                ray.arrival.azimuth = wrap_deg(aoa[i] + p.c_asa_deg * alpha[r]) * kDeg;
                ray.departure.azimuth = wrap_deg(aod[i] + p.c_asd_deg * alpha[perm_aod[r]]) * kDeg;
                ray.arrival.zenith = fold_zenith_deg(zoa[i] + p.c_zsa_deg * alpha[perm_zoa[r]]) * kDeg;
                ray.departure.zenith = fold_zenith_deg(zod[i] + c_zsd * alpha[perm_zod[r]]) * kDeg;
                ray.xpr = std::pow(10.0, xpr_rng.normal(p.xpr_mu_db, p.xpr_sigma_db) / 10.0);
                for (auto &ph : ray.phases)
                    ph = kPi - 2.0 * kPi * phase_rng.uniform();
            }
            out.clusters.push_back(std::move(c));
        }

        if (options.subcluster_split)
        {
            // Two strongest clusters -> three sub-clusters each (ray groups 10/6/4).
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b)
                             { return pw[a] > pw[b]; });
            static const std::array<std::vector<int>, 3> groups = {std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 18, 19},
                                                                   std::vector<int>{8, 9, 10, 11, 16, 17},
                                                                   std::vector<int>{12, 13, 14, 15}};
            const double c_ds = p.c_ds_ns * 1e-9;
            std::vector<Cluster> split;
            for (int i = 0; i < n; ++i)
            {
                Cluster &c = out.clusters[i];
                if (i != order[0] && i != order[1])
                {
                    split.push_back(std::move(c));
                    continue;
                }
                for (int g = 0; g < 3; ++g)
                {
                    Cluster sc;
                    sc.index = c.index;
                    sc.delay = c.delay + g * 1.28 * c_ds;
                    sc.power = c.power * double(groups[g].size()) / 20.0;
                    for (int r : groups[g])
                    {
                        Ray ray = c.rays[r];
                        ray.delay = sc.delay;
                        sc.rays.push_back(ray);
                    }
                    split.push_back(std::move(sc));
                }
            }
            std::stable_sort(split.begin(), split.end(), [](const Cluster &a, const Cluster &b)
                             { return a.delay < b.delay; });
            out.clusters = std::move(split);
        }

        if (los)
        {
            Ray r;
            r.delay = 0.0;
            r.amplitude_weight = 1.0;
            r.departure = aod_los;
            r.arrival = aoa_los;
            r.xpr = std::numeric_limits<double>::infinity();
            out.los_ray = r;
        }

        if (options.absolute_delay || options.nlos_excess_delay)
        {
            double shift = hop.d3d / kSpeedOfLight;
            if (options.nlos_excess_delay && !los)
            {
                if (!p.abs_delay_lg_mu || !p.abs_delay_lg_sigma)
                    throw ConfigError("scenario table has no abs_delay entries for NLOS excess delay");
                auto s = ctx.stream(RngTag::AbsoluteDelay);
                shift += draw_lognormal10(s, *p.abs_delay_lg_mu, *p.abs_delay_lg_sigma);
            }
            out.absolute_delay = shift;
            for (auto &c : out.clusters)
            {
                c.delay += shift;
                for (auto &r : c.rays)
                    r.delay += shift;
            }
            if (out.los_ray)
                out.los_ray->delay += shift;
        }
        return out;
    }

    SubLinkClusters mono_static_reciprocal(const SubLinkClusters &in)
    {
        SubLinkClusters out = in;
        std::swap(out.hop.from, out.hop.to);
        std::swap(out.lsp.asa_deg, out.lsp.asd_deg);
        std::swap(out.lsp.zsa_deg, out.lsp.zsd_deg);
        auto flip = [](Ray &r)
        {
            std::swap(r.departure, r.arrival);
            std::swap(r.phases[1], r.phases[2]);
        };
        if (out.los_ray)
            flip(*out.los_ray);
        for (auto &c : out.clusters)
            for (auto &r : c.rays)
                flip(r);
        return out;
    }

    double total_cluster_power(const SubLinkClusters &s)
    {
        double sum = 0.0;
        for (const auto &c : s.clusters)
            sum += c.power;
        return sum;
    }
}
