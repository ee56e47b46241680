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

#include "isac/concatenation.hpp"

#include "isac/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace isac
{
    namespace
    {
        constexpr std::array<std::string_view, 10> kCaseNames = {"CaseA", "Case0", "Case1", "Case2O", "Case2R",
                                                                 "Case3", "Case1N", "Case2ON", "Case2RN", "Case3N"};

        RayPolarization polarization_of(const Ray &r) { return {r.xpr, r.phases}; }

        // Flattened (cluster, ray) view of one hop's NLOS rays.
        struct RayEntry
        {
            RayRef ref;
            const Ray *ray;
        };

        std::vector<RayEntry> pool(const SubLinkClusters &s)
        {
            std::vector<RayEntry> out;
            for (std::uint32_t c = 0; c < s.clusters.size(); ++c)
                for (std::uint32_t r = 0; r < s.clusters[c].rays.size(); ++r)
                    out.push_back({{c, r}, &s.clusters[c].rays[r]});
            return out;
        }

        // Cluster indices ordered by ascending delay (stable on ties).
        std::vector<std::uint32_t> delay_order(const SubLinkClusters &s)
        {
            std::vector<std::uint32_t> idx(s.clusters.size());
            std::iota(idx.begin(), idx.end(), 0u);
            std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b)
                             { return s.clusters[a].delay < s.clusters[b].delay; });
            return idx;
        }

        struct Builder
        {
            const SubLinkClusters &tx;
            const SubLinkClusters &rx;
            double g_tx;
            double g_rx;
            std::vector<ConcatenatedPath> &out;

            void nn(const RayEntry &a, const RayEntry &b) const
            {
                ConcatenatedPath p;
                p.pair = ConditionPair::NN;
                p.joint_delay = a.ray->delay + b.ray->delay;
                p.amplitude_weight = g_tx * g_rx * a.ray->amplitude_weight * b.ray->amplitude_weight;
                p.tx_departure = a.ray->departure;
                p.target_arrival = a.ray->arrival;
                p.target_departure = b.ray->departure;
                p.rx_arrival = b.ray->arrival;
                p.tx_ray = a.ref;
                p.rx_ray = b.ref;
                p.tx_pol = polarization_of(*a.ray);
                p.rx_pol = polarization_of(*b.ray);
                out.push_back(p);
            }

            // Rays of two clusters coupled 1-by-1; `rx_perm` maps positions to rx ray indices.
            void ray_one_to_one(std::uint32_t ct, std::uint32_t cr, const std::vector<std::uint32_t> *tx_perm,
                                const std::vector<std::uint32_t> *rx_perm) const
            {
                const auto &a = tx.clusters[ct].rays;
                const auto &b = rx.clusters[cr].rays;
                const std::size_t m = std::min(a.size(), b.size());
                for (std::size_t k = 0; k < m; ++k)
                {
                    const std::uint32_t i = tx_perm ? (*tx_perm)[k] : std::uint32_t(k);
                    const std::uint32_t j = rx_perm ? (*rx_perm)[k] : std::uint32_t(k);
                    nn({{ct, i}, &a[i]}, {{cr, j}, &b[j]});
                }
            }
        };

        std::vector<std::uint32_t> random_perm(std::size_t n, RandomStream &rng)
        {
            std::vector<std::uint32_t> v(n);
            std::iota(v.begin(), v.end(), 0u);
            rng.shuffle(std::span<std::uint32_t>(v));
            return v;
        }
    }

    std::string_view to_string(ConcatCase c) { return kCaseNames[static_cast<std::size_t>(c)]; }

    ConcatCase parse_concat_case(std::string_view name)
    {
        for (std::size_t i = 0; i < kCaseNames.size(); ++i)
            if (kCaseNames[i] == name)
                return static_cast<ConcatCase>(i);
        throw ConfigError("unknown concat_case '" + std::string(name) +
                          "' (expected CaseA, Case0, Case1, Case2O, Case2R, Case3, Case1N, Case2ON, Case2RN, Case3N)");
    }

    bool is_normalized(ConcatCase c)
    {
        return c == ConcatCase::Case1N || c == ConcatCase::Case2ON || c == ConcatCase::Case2RN || c == ConcatCase::Case3N;
    }

    ConcatCase base_case(ConcatCase c)
    {
        switch (c)
        {
        case ConcatCase::Case1N:
            return ConcatCase::Case1;
        case ConcatCase::Case2ON:
            return ConcatCase::Case2O;
        case ConcatCase::Case2RN:
            return ConcatCase::Case2R;
        case ConcatCase::Case3N:
            return ConcatCase::Case3;
        default:
            return c;
        }
    }

    std::string_view to_string(ConditionPair p)
    {
        constexpr std::array<std::string_view, 4> names = {"LL", "LN", "NL", "NN"};
        return names[static_cast<std::size_t>(p)];
    }

    ConditionPair parse_condition_pair(std::string_view s)
    {
        if (s == "LL")
            return ConditionPair::LL;
        if (s == "LN")
            return ConditionPair::LN;
        if (s == "NL")
            return ConditionPair::NL;
        if (s == "NN")
            return ConditionPair::NN;
        throw ConfigError("unknown condition pair '" + std::string(s) + "' (expected LL, LN, NL, NN)");
    }

    ConditionPair condition_pair(LinkCondition tx, LinkCondition rx)
    {
        const bool a = tx == LinkCondition::LOS, b = rx == LinkCondition::LOS;
        return a ? (b ? ConditionPair::LL : ConditionPair::LN) : (b ? ConditionPair::NL : ConditionPair::NN);
    }

    KWeights k_weights(double kp, double kq)
    {
        if (kp < 0.0 || kq < 0.0 || std::isnan(kp) || std::isnan(kq))
            throw DomainError("k_weights: K-factors must be nonnegative");
        auto spec = [](double k) { return std::isinf(k) ? 1.0 : std::sqrt(k / (k + 1.0)); };
        auto diff = [](double k) { return std::isinf(k) ? 0.0 : std::sqrt(1.0 / (k + 1.0)); };
        return {spec(kp) * spec(kq), spec(kp) * diff(kq), diff(kp) * spec(kq), diff(kp) * diff(kq)};
    }

    TargetPathSet concatenate(const SubLinkClusters &tx, const SubLinkClusters &rx, ConcatCase concat_case,
                              RandomStream &rng)
    {
        const bool tx_los = tx.hop.condition == LinkCondition::LOS;
        const bool rx_los = rx.hop.condition == LinkCondition::LOS;
        if (tx_los != tx.los_ray.has_value() || rx_los != rx.los_ray.has_value())
            throw DomainError("concatenate: LOS ray presence does not match the hop condition");
        if (tx.clusters.empty() || rx.clusters.empty())
            throw DomainError("concatenate: empty cluster list");

        TargetPathSet set;
        set.concat_case = concat_case;
        set.link_condition = condition_pair(tx.hop.condition, rx.hop.condition);
        set.k_weights = k_weights(tx.hop.k_factor, rx.hop.k_factor);
        set.los_distance_tx = tx.hop.d3d;
        set.los_distance_rx = rx.hop.d3d;

        const double sum_tx = total_cluster_power(tx);
        const double sum_rx = total_cluster_power(rx);
        if (!(sum_tx > 0.0) || !(sum_rx > 0.0))
            throw DomainError("concatenate: cluster powers must sum to a positive value");
        const double g_tx = std::sqrt(1.0 / sum_tx);
        const double g_rx = std::sqrt(1.0 / sum_rx);
        auto &out = set.paths;

        if (tx_los && rx_los)
        {
            ConcatenatedPath p;
            p.pair = ConditionPair::LL;
            p.joint_delay = tx.los_ray->delay + rx.los_ray->delay;
            p.amplitude_weight = 1.0;
            p.tx_departure = tx.los_ray->departure;
            p.target_arrival = tx.los_ray->arrival;
            p.target_departure = rx.los_ray->departure;
            p.rx_arrival = rx.los_ray->arrival;
            out.push_back(p);
        }
        if (tx_los)
        {
            for (const auto &e : pool(rx))
            {
                ConcatenatedPath p;
                p.pair = ConditionPair::LN;
                p.joint_delay = tx.los_ray->delay + e.ray->delay;
                p.amplitude_weight = g_rx * e.ray->amplitude_weight;
                p.tx_departure = tx.los_ray->departure;
                p.target_arrival = tx.los_ray->arrival;
                p.target_departure = e.ray->departure;
                p.rx_arrival = e.ray->arrival;
                p.rx_ray = e.ref;
                p.rx_pol = polarization_of(*e.ray);
                out.push_back(p);
            }
        }
        if (rx_los)
        {
            for (const auto &e : pool(tx))
            {
                ConcatenatedPath p;
                p.pair = ConditionPair::NL;
                p.joint_delay = e.ray->delay + rx.los_ray->delay;
                p.amplitude_weight = g_tx * e.ray->amplitude_weight;
                p.tx_departure = e.ray->departure;
                p.target_arrival = e.ray->arrival;
                p.target_departure = rx.los_ray->departure;
                p.rx_arrival = rx.los_ray->arrival;
                p.tx_ray = e.ref;
                p.tx_pol = polarization_of(*e.ray);
                out.push_back(p);
            }
        }

        const std::size_t first_nn = out.size();
        const Builder b{tx, rx, g_tx, g_rx, out};
        ConcatCase method = base_case(concat_case);
        if (method == ConcatCase::CaseA)
        {
            if (tx_los || rx_los)
                method = ConcatCase::CaseA; // NLOS-NLOS part dropped
            else
                method = ConcatCase::Case0;
        }

        switch (method)
        {
        case ConcatCase::CaseA:
            break;
        case ConcatCase::Case0:
        {
            const auto a = pool(tx), c = pool(rx);
            out.reserve(out.size() + a.size() * c.size());
            for (const auto &ea : a)
                for (const auto &ec : c)
                    b.nn(ea, ec);
            break;
        }
        case ConcatCase::Case1:
            for (std::uint32_t p = 0; p < tx.clusters.size(); ++p)
                for (std::uint32_t q = 0; q < rx.clusters.size(); ++q)
                    b.ray_one_to_one(p, q, nullptr, nullptr);
            break;
        case ConcatCase::Case2O:
        {
            const auto ot = delay_order(tx), orx = delay_order(rx);
            const std::size_t n = std::min(ot.size(), orx.size());
            for (std::size_t i = 0; i < n; ++i)
                b.ray_one_to_one(ot[i], orx[i], nullptr, nullptr);
            break;
        }
        case ConcatCase::Case2R:
        {
            // The min(P, Q) earliest clusters of each hop take part; their pairing and the
            // ray pairing inside every cluster pair are random.
            const auto ot = delay_order(tx), orx = delay_order(rx);
            const std::size_t n = std::min(ot.size(), orx.size());
            const auto perm = random_perm(n, rng);
            for (std::size_t i = 0; i < n; ++i)
            {
                const auto ct = ot[i], cr = orx[perm[i]];
                const auto rperm = random_perm(rx.clusters[cr].rays.size(), rng);
                b.ray_one_to_one(ct, cr, nullptr, &rperm);
            }
            break;
        }
        case ConcatCase::Case3:
        {
            auto a = pool(tx), c = pool(rx);
            rng.shuffle(std::span<RayEntry>(a));
            rng.shuffle(std::span<RayEntry>(c));
            const std::size_t n = std::min(a.size(), c.size());
            for (std::size_t i = 0; i < n; ++i)
                b.nn(a[i], c[i]);
            break;
        }
        default:
            throw DomainError("concatenate: unreachable case");
        }

        if (is_normalized(concat_case) && out.size() > first_nn)
        {
            double e = 0.0;
            for (std::size_t i = first_nn; i < out.size(); ++i)
                e += out[i].amplitude_weight * out[i].amplitude_weight;
            const double s = 1.0 / std::sqrt(e);
            for (std::size_t i = first_nn; i < out.size(); ++i)
                out[i].amplitude_weight *= s;
            set.normalization_applied = true;
        }
        return set;
    }

    double nn_total_power(const TargetPathSet &set)
    {
        double e = 0.0;
        for (const auto &p : set.paths)
            if (p.pair == ConditionPair::NN)
                e += p.amplitude_weight * p.amplitude_weight;
        return e;
    }

    std::size_t count_paths(const TargetPathSet &set, ConditionPair pair)
    {
        return std::size_t(std::count_if(set.paths.begin(), set.paths.end(), [&](const auto &p)
                                         { return p.pair == pair; }));
    }
}
