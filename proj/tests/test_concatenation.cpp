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
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

using namespace isac;
using fixture::sublink;

namespace
{
    SubLinkClusters tx_side(LinkCondition c, std::uint32_t drop = 0) { return sublink(c, 17, drop, RngHop::TxTarget); }
    SubLinkClusters rx_side(LinkCondition c, std::uint32_t drop = 0) { return sublink(c, 17, drop, RngHop::TargetRx); }

    TargetPathSet run(ConcatCase k, const SubLinkClusters &a, const SubLinkClusters &b, std::uint64_t seed = 5)
    {
        RandomStream r(seed, 0, RngHop::Target, RngTag::ConcatCoupling);
        return concatenate(a, b, k, r);
    }

    std::size_t rays(const SubLinkClusters &s)
    {
        std::size_t n = 0;
        for (const auto &c : s.clusters)
            n += c.rays.size();
        return n;
    }
}

TEST_CASE("case names round-trip")
{
    for (auto c : kAllConcatCases)
        CHECK(parse_concat_case(to_string(c)) == c);
    CHECK(to_string(ConcatCase::Case2RN) == "Case2RN");
    CHECK_THROWS_WITH_AS(parse_concat_case("Case4"), doctest::Contains("Case4"), ConfigError);
    CHECK(base_case(ConcatCase::Case3N) == ConcatCase::Case3);
    CHECK(is_normalized(ConcatCase::Case2ON));
    CHECK_FALSE(is_normalized(ConcatCase::Case2O));
    CHECK(parse_condition_pair("NL") == ConditionPair::NL);
    CHECK_THROWS_AS(parse_condition_pair("XX"), ConfigError);
}

TEST_CASE("K-factor prefactors")
{
    const double inf = std::numeric_limits<double>::infinity();
    auto w = k_weights(inf, 0.0);
    CHECK(w.ll == 0.0);
    CHECK(w.ln == 1.0);
    CHECK(w.nl == 0.0);
    CHECK(w.nn == 0.0);
    w = k_weights(0.0, 0.0);
    CHECK(w.nn == 1.0);
    CHECK(w.ll == 0.0);
    w = k_weights(3.0, 1.0);
    CHECK(w.ll == doctest::Approx(std::sqrt(0.75 * 0.5)));
    CHECK(w.ln == doctest::Approx(std::sqrt(0.75 * 0.5)));
    CHECK(w.nl == doctest::Approx(std::sqrt(0.25 * 0.5)));
    CHECK(w.nn == doctest::Approx(std::sqrt(0.25 * 0.5)));
    CHECK(w.ll * w.ll + w.ln * w.ln + w.nl * w.nl + w.nn * w.nn == doctest::Approx(1.0));
    CHECK_THROWS_AS(k_weights(-1.0, 0.0), DomainError);
}

TEST_CASE("Case0 NLOS-NLOS: full ray convolution with unit power")
{
    const auto a = tx_side(LinkCondition::NLOS), b = rx_side(LinkCondition::NLOS);
    const auto s = run(ConcatCase::Case0, a, b);
    CHECK(s.paths.size() == rays(a) * rays(b));
    CHECK(count_paths(s, ConditionPair::NN) == 380 * 380);
    CHECK(nn_total_power(s) == doctest::Approx(1.0).epsilon(1e-12));
    // Spot-check one path against the hop rays.
    const auto &p = s.paths[12345];
    const auto &ra = a.clusters[p.tx_ray->cluster].rays[p.tx_ray->ray];
    const auto &rb = b.clusters[p.rx_ray->cluster].rays[p.rx_ray->ray];
    CHECK(p.joint_delay == ra.delay + rb.delay);
    CHECK(p.amplitude_weight == doctest::Approx(ra.amplitude_weight * rb.amplitude_weight));
    CHECK(p.target_arrival.azimuth == ra.arrival.azimuth);
    CHECK(p.target_departure.azimuth == rb.departure.azimuth);
    CHECK(p.tx_pol.phases == ra.phases);
    CHECK(p.rx_pol.xpr == rb.xpr);
}

TEST_CASE("Case1 and Case2O counts and power match hand sums")
{
    const auto a = tx_side(LinkCondition::NLOS, 3), b = rx_side(LinkCondition::NLOS, 3);
    const auto c1 = run(ConcatCase::Case1, a, b);
    CHECK(c1.paths.size() == 19u * 19u * 20u);
    double expect1 = 0;
    for (const auto &x : a.clusters)
        for (const auto &y : b.clusters)
            expect1 += x.power * y.power / 20.0;
    CHECK(nn_total_power(c1) == doctest::Approx(expect1).epsilon(1e-12));
    CHECK(nn_total_power(c1) == doctest::Approx(1.0 / 20.0).epsilon(1e-12));

    const auto c2 = run(ConcatCase::Case2O, a, b);
    CHECK(c2.paths.size() == 19u * 20u);
    double expect2 = 0;
    for (std::size_t k = 0; k < 19; ++k)
        expect2 += a.clusters[k].power * b.clusters[k].power / 20.0;
    CHECK(nn_total_power(c2) == doctest::Approx(expect2).epsilon(1e-12));
    for (const auto &p : c2.paths)
    {
        CHECK(p.tx_ray->cluster == p.rx_ray->cluster);
        CHECK(p.tx_ray->ray == p.rx_ray->ray);
    }
}

TEST_CASE("Case2R and Case3 use each cluster or ray at most once")
{
    const auto a = tx_side(LinkCondition::NLOS, 4), b = rx_side(LinkCondition::NLOS, 4);
    const auto c2 = run(ConcatCase::Case2R, a, b);
    CHECK(c2.paths.size() == 19u * 20u);
    std::set<std::pair<std::uint32_t, std::uint32_t>> tx_used, rx_used;
    std::set<std::pair<std::uint32_t, std::uint32_t>> cluster_pairs;
    for (const auto &p : c2.paths)
    {
        CHECK(tx_used.insert({p.tx_ray->cluster, p.tx_ray->ray}).second);
        CHECK(rx_used.insert({p.rx_ray->cluster, p.rx_ray->ray}).second);
        cluster_pairs.insert({p.tx_ray->cluster, p.rx_ray->cluster});
    }
    CHECK(cluster_pairs.size() == 19);

    const auto c3 = run(ConcatCase::Case3, a, b);
    CHECK(c3.paths.size() == 380u);
    tx_used.clear();
    rx_used.clear();
    for (const auto &p : c3.paths)
    {
        CHECK(tx_used.insert({p.tx_ray->cluster, p.tx_ray->ray}).second);
        CHECK(rx_used.insert({p.rx_ray->cluster, p.rx_ray->ray}).second);
    }

    // Random pairings depend on the coupling stream, not on anything else.
    const auto again = run(ConcatCase::Case3, a, b);
    const auto other = run(ConcatCase::Case3, a, b, 6);
    CHECK(again.paths[10].rx_ray == c3.paths[10].rx_ray);
    bool differs = false;
    for (std::size_t i = 0; i < c3.paths.size(); ++i)
        differs |= !(other.paths[i].rx_ray == c3.paths[i].rx_ray);
    CHECK(differs);
}

TEST_CASE("normalized variants restore unit NLOS-NLOS power")
{
    const auto a = tx_side(LinkCondition::NLOS, 8), b = rx_side(LinkCondition::NLOS, 8);
    for (auto k : {ConcatCase::Case1N, ConcatCase::Case2ON, ConcatCase::Case2RN, ConcatCase::Case3N})
    {
        const auto s = run(k, a, b);
        CHECK(s.normalization_applied);
        CHECK(nn_total_power(s) == doctest::Approx(1.0).epsilon(1e-12));
        const auto u = run(base_case(k), a, b);
        CHECK(u.paths.size() == s.paths.size());
        // Same pairing, single common scale.
        const double scale = s.paths[0].amplitude_weight / u.paths[0].amplitude_weight;
        for (std::size_t i = 0; i < s.paths.size(); ++i)
            CHECK(s.paths[i].amplitude_weight == doctest::Approx(scale * u.paths[i].amplitude_weight).epsilon(1e-12));
    }
}

TEST_CASE("mixed LOS/NLOS hops")
{
    const auto al = tx_side(LinkCondition::LOS, 2), bn = rx_side(LinkCondition::NLOS, 2);
    const auto s = run(ConcatCase::Case0, al, bn);
    CHECK(s.link_condition == ConditionPair::LN);
    CHECK(count_paths(s, ConditionPair::LN) == rays(bn));
    CHECK(count_paths(s, ConditionPair::NN) == rays(al) * rays(bn));
    CHECK(count_paths(s, ConditionPair::LL) == 0);
    double ln_power = 0;
    for (const auto &p : s.paths)
        if (p.pair == ConditionPair::LN)
        {
            ln_power += p.amplitude_weight * p.amplitude_weight;
            CHECK_FALSE(p.tx_ray.has_value());
        }
    CHECK(ln_power == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.k_weights.ln == doctest::Approx(std::sqrt(al.hop.k_factor / (al.hop.k_factor + 1))));
    CHECK(s.k_weights.nl == 0.0);

    const auto a = run(ConcatCase::CaseA, al, bn);
    CHECK(count_paths(a, ConditionPair::NN) == 0);
    CHECK(count_paths(a, ConditionPair::LN) == rays(bn));

    const auto bl = rx_side(LinkCondition::LOS, 2);
    const auto ll = run(ConcatCase::Case2O, al, bl);
    REQUIRE(count_paths(ll, ConditionPair::LL) == 1);
    CHECK(ll.paths.front().pair == ConditionPair::LL);
    CHECK(ll.paths.front().amplitude_weight == 1.0);
    CHECK(count_paths(ll, ConditionPair::NL) == rays(al));
}

TEST_CASE("CaseA with both hops NLOS equals Case0")
{
    const auto a = tx_side(LinkCondition::NLOS, 6), b = rx_side(LinkCondition::NLOS, 6);
    const auto x = run(ConcatCase::CaseA, a, b), y = run(ConcatCase::Case0, a, b);
    REQUIRE(x.paths.size() == y.paths.size());
    for (std::size_t i = 0; i < x.paths.size(); i += 997)
    {
        CHECK(x.paths[i].amplitude_weight == y.paths[i].amplitude_weight);
        CHECK(x.paths[i].joint_delay == y.paths[i].joint_delay);
    }
}

TEST_CASE("unnormalized hop powers are compensated by g")
{
    auto a = tx_side(LinkCondition::NLOS, 1), b = rx_side(LinkCondition::NLOS, 1);
    for (auto &c : a.clusters)
    {
        c.power *= 4.0;
        for (auto &r : c.rays)
            r.amplitude_weight *= 2.0;
    }
    CHECK(nn_total_power(run(ConcatCase::Case0, a, b)) == doctest::Approx(1.0).epsilon(1e-12));
}
