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

#include "isac/error.hpp"
#include "isac/rng.hpp"
#include "isac/stats.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace isac;

TEST_CASE("delay spread examples")
{
    const std::vector<double> t{0.0, 1.0}, w{1.0, 1.0};
    CHECK(weighted_delay_spread(t, w) == doctest::Approx(0.5));
    const std::vector<double> t3{0.0, 1e-7, 3e-7}, w3{0.5, 0.3, 0.2};
    const double m = 0.3e-7 + 0.6e-7;
    const double v = 0.5 * m * m + 0.3 * (1e-7 - m) * (1e-7 - m) + 0.2 * (3e-7 - m) * (3e-7 - m);
    CHECK(weighted_delay_spread(t3, w3) == doctest::Approx(std::sqrt(v)).epsilon(1e-12));
    CHECK(weighted_delay_spread(std::vector<double>{5e-8}, std::vector<double>{2.0}) == 0.0);
}

TEST_CASE("circular angle spread against a brute-force scan")
{
    // Two equal paths straddling the +-180 deg seam are 10 deg apart, spread 5 deg.
    const std::vector<double> az{175 * kDeg, -175 * kDeg}, w{1, 1};
    CHECK(circular_angle_spread(az, w) == doctest::Approx(5.0).epsilon(1e-12));

    RandomStream r(21, 0, RngHop::Test, RngTag::User);
    for (int trial = 0; trial < 200; ++trial)
    {
        const int n = 2 + int(r.below(30));
        const double centre = r.uniform(-kPi, kPi), width = r.uniform(0.05, 3.0);
        std::vector<double> a(n), p(n);
        for (int i = 0; i < n; ++i)
        {
            a[i] = wrap_azimuth(centre + width * r.normal());
            p[i] = r.uniform(0.01, 1.0);
        }
        const double got = circular_angle_spread(a, p);
        const double ref = oracle::circular_spread_scan(a, p);
        CHECK(got <= ref + 1e-9);
        CHECK(got == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("zenith spread is the plain weighted RMS")
{
    const std::vector<double> z{80 * kDeg, 100 * kDeg}, w{3, 1};
    // mean 85 deg, variance 0.75*25 + 0.25*225 = 75
    CHECK(linear_angle_spread(z, w) == doctest::Approx(std::sqrt(75.0)).epsilon(1e-12));
}

TEST_CASE("empirical CDF and quantiles")
{
    const auto c = empirical_cdf({3.0, 1.0, 2.0, 2.0});
    CHECK(c.values == std::vector<double>{1, 2, 2, 3});
    CHECK(c(0.5) == 0.0);
    CHECK(c(2.0) == 0.75);
    CHECK(c(10.0) == 1.0);
    CHECK(c.quantile(0.5) == 2.0);
    CHECK(c.quantile(1.0) == 3.0);
    CHECK(c.quantile(0.0) == 1.0);
    CHECK_THROWS_AS(empirical_cdf({}), DomainError);
    CHECK_THROWS_AS(c.quantile(1.5), DomainError);
}

TEST_CASE("KS statistic against brute force, with ties")
{
    CHECK(ks_statistic(empirical_cdf({1, 2, 3}), empirical_cdf({1, 2, 3})) == 0.0);
    CHECK(ks_statistic(empirical_cdf({1, 2}), empirical_cdf({3, 4})) == 1.0);
    RandomStream r(4, 0, RngHop::Test, RngTag::User);
    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<double> a(1 + r.below(60)), b(1 + r.below(60));
        for (auto &x : a)
            x = double(r.below(20));
        for (auto &x : b)
            x = double(r.below(20)) + (trial % 2 ? 0.5 : 0.0);
        CHECK(ks_statistic(empirical_cdf(a), empirical_cdf(b)) ==
              doctest::Approx(oracle::ks_bruteforce(a, b)).epsilon(1e-15));
    }
}

TEST_CASE("drop statistics of a full convolution")
{
    RandomStream r(1, 0, RngHop::Target, RngTag::ConcatCoupling);
    const auto a = fixture::sublink(LinkCondition::NLOS, 3, 0, RngHop::TxTarget);
    const auto b = fixture::sublink(LinkCondition::NLOS, 3, 0, RngHop::TargetRx);
    const auto set = concatenate(a, b, ConcatCase::Case0, r);
    const auto s = drop_statistics(set);
    CHECK(s.total_power == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.condition == ConditionPair::NN);

    // The joint delay of a full convolution is a sum of independent hop delays, so its
    // variance is the sum of the hop variances.
    auto hop_ds = [](const SubLinkClusters &h)
    {
        std::vector<double> t, w;
        for (const auto &c : h.clusters)
        {
            t.push_back(c.delay);
            w.push_back(c.power);
        }
        return weighted_delay_spread(t, w);
    };
    const double expect = std::hypot(hop_ds(a), hop_ds(b));
    CHECK(s.ds == doctest::Approx(expect).epsilon(1e-9));

    // Departure spread depends on the Tx hop only.
    std::vector<double> az, w;
    for (const auto &c : a.clusters)
        for (const auto &ray : c.rays)
        {
            az.push_back(ray.departure.azimuth);
            w.push_back(ray.amplitude_weight * ray.amplitude_weight);
        }
    CHECK(s.asd == doctest::Approx(circular_angle_spread(az, w)).epsilon(1e-9));
    CHECK(s.spread(SpreadKind::ZSA) == s.zsa);
}
