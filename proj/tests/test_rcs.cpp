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
#include "isac/rcs.hpp"

#include <doctest.h>

#include <cmath>

using namespace isac;

TEST_CASE("B1 table parsing and interpolation")
{
    const auto b = parse_b1_table("# angle gain\n-180 1\n0 3  # peak\n\n180 1\n");
    CHECK(b.at(0.0) == 3.0);
    CHECK(b.at(90.0) == doctest::Approx(2.0));
    CHECK(b.at(-45.0) == doctest::Approx(2.5));
    CHECK(b.at(180.0) == 1.0);

    const auto narrow = parse_b1_table("-10 1\n10 2\n");
    CHECK_THROWS_WITH_AS(narrow.at(45.0), doctest::Contains("does not cover"), DomainError);

    CHECK_THROWS_AS(parse_b1_table("0 1\n0 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_b1_table("0 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_b1_table("0 1\n10 -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_b1_table("0 1\n10 x\n"), ConfigError);
    CHECK_THROWS_AS(load_b1_table("/nonexistent/b1.txt"), ConfigError);
    CHECK(B1Pattern{}.is_constant());
    CHECK(B1Pattern{}.at(123.0) == 1.0);
}

TEST_CASE("RCS with sigma_db = 0 is exactly A * B1")
{
    RcsModel m;
    m.a_m2 = 2.5;
    m.b1 = parse_b1_table("-180 1\n0 3\n180 1\n");
    RandomStream r(1, 0, RngHop::Target, RngTag::RcsFluctuation);
    const DirectionAngles inc{kPi / 2, kPi / 2}; // 90 deg azimuth
    CHECK(b1_angle_deg(inc) == doctest::Approx(90.0));
    CHECK(sample_rcs(m, inc, r) == doctest::Approx(2.5 * 2.0).epsilon(1e-15));
    CHECK(sample_small_scale_rcs(m, inc, r) == doctest::Approx(2.0).epsilon(1e-15));

    RcsModel unit;
    CHECK(sample_rcs(unit, inc, r) == 1.0);
}

TEST_CASE("small-scale draw consumes one normal even when deterministic")
{
    RcsModel m;
    RandomStream a(3, 0, RngHop::Target, RngTag::RcsFluctuation);
    RandomStream b(3, 0, RngHop::Target, RngTag::RcsFluctuation);
    sample_small_scale_rcs(m, {kPi / 2, 0.0}, a);
    b.normal();
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("B2 statistics and the log-normal fit")
{
    RcsModel m;
    m.mu_db = -3.0;
    m.sigma_db = 4.0;
    RandomStream r(8, 0, RngHop::Target, RngTag::RcsFluctuation);
    std::vector<double> s;
    for (int i = 0; i < 100000; ++i)
        s.push_back(sample_rcs(m, {kPi / 2, 0.0}, r));
    const auto fit = fit_lognormal_db(s);
    CHECK(std::abs(fit.mu_db + 3.0) < 0.05);
    CHECK(std::abs(fit.sigma_db - 4.0) < 0.05);

    const auto exact = fit_lognormal_db({std::pow(10.0, 0.1), std::pow(10.0, 0.2), std::pow(10.0, 0.3)});
    CHECK(exact.mu_db == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(exact.sigma_db == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_lognormal_db({1.0}), DomainError);
    CHECK_THROWS_AS(fit_lognormal_db({1.0, 0.0}), DomainError);

    m.sigma_db = -1.0;
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m.sigma_db = 0.0;
    m.a_m2 = 0.0;
    CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("MBET equivalence and its validity bound")
{
    const MonoStaticRcs mono = [](double f, double aspect) { return f * 1e-9 + aspect; };
    bool warned = true;
    CHECK(mbet_bistatic(mono, 6e9, 0.2, 10 * kDeg, {}, &warned) ==
          doctest::Approx(6.0 * std::cos(5 * kDeg) + 0.2).epsilon(1e-14));
    CHECK_FALSE(warned);
    CHECK(mbet_bistatic(mono, 6e9, 0.0, 0.0) == doctest::Approx(6.0));
    mbet_bistatic(mono, 6e9, 0.2, 25 * kDeg, {}, &warned);
    CHECK(warned);
    CHECK_THROWS_WITH_AS(mbet_bistatic(mono, 6e9, 0.2, 31 * kDeg), doctest::Contains("MBET validity exceeded"),
                         DomainError);
    CHECK_NOTHROW(mbet_bistatic(mono, 6e9, 0.2, -30 * kDeg));
}

TEST_CASE("resolution cell volume and the point-target test")
{
    const ResolutionCell cell{0.01, 100.0, 1e-6};
    CHECK(cell.volume() == doctest::Approx(0.01 * 1e4 * 3e8 * 1e-6 / 2));
    CHECK(cell.volume() == doctest::Approx(15000.0));
    CHECK(is_point_target(cell, 15000.0));
    CHECK(is_point_target(cell, 1.0));
    CHECK_FALSE(is_point_target(cell, 15000.1));
    CHECK_THROWS_AS(is_point_target(cell, -1.0), DomainError);
}

TEST_CASE("polarization scattering modes")
{
    const std::array<double, 4> al{0.5, 0.3, 0.2, 0.7};
    CHECK(effective_alphas(PolarizationMode::Identity, al) == std::array<double, 4>{1, 0, 0, 1});
    CHECK(effective_alphas(PolarizationMode::Partial, al) == std::array<double, 4>{1, 0.3, 0.2, 1});
    CHECK(effective_alphas(PolarizationMode::Full, al) == al);

    RandomStream a(4, 0, RngHop::Target, RngTag::TargetPolarization);
    RandomStream b(4, 0, RngHop::Target, RngTag::TargetPolarization);
    const auto id = draw_polarization_scattering(PolarizationMode::Identity, al, a);
    CHECK(a.next_u64() == b.next_u64());
    const Mat2c s = scattering_matrix(id);
    CHECK(s(0, 0) == cdouble(1, 0));
    CHECK(s(0, 1) == cdouble(0, 0));
    CHECK(s(1, 0) == cdouble(0, 0));
    CHECK(s(1, 1) == cdouble(1, 0));

    const auto full = draw_polarization_scattering(PolarizationMode::Full, al, a);
    const Mat2c f = scattering_matrix(full);
    CHECK(std::abs(f(0, 0)) == doctest::Approx(0.5));
    CHECK(std::abs(f(0, 1)) == doctest::Approx(0.3));
    CHECK(std::abs(f(1, 0)) == doctest::Approx(0.2));
    CHECK(std::abs(f(1, 1)) == doctest::Approx(0.7));
    CHECK(parse_polarization_mode("partial") == PolarizationMode::Partial);
    CHECK_THROWS_AS(parse_polarization_mode("circular"), ConfigError);
    CHECK(parse_target_class("uav") == TargetClass::Uav);
    CHECK_THROWS_AS(parse_target_class("ship"), ConfigError);
}
