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

#include "isac/coefficients.hpp"
#include "isac/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace isac;
using fixture::node;
using fixture::sublink;
using fixture::umi6;

namespace
{
    constexpr double kLambda = 0.05;

    Vec3 unit(double zen, double az)
    {
        return {std::sin(zen) * std::cos(az), std::sin(zen) * std::sin(az), std::cos(zen)};
    }

    double path_length(Vec3 a, Vec3 b, Vec3 c) { return (b - a).norm() + (c - b).norm(); }

    double max_abs_diff(const ChannelCir &a, const ChannelCir &b)
    {
        double d = 0.0;
        for (std::size_t i = 0; i < a.gains.size(); ++i)
            d = std::max(d, std::abs(a.gains[i] - b.gains[i]));
        return d;
    }

    TargetPathSet pathset(ConcatCase k, LinkCondition a, LinkCondition b, std::uint32_t drop = 0)
    {
        RandomStream r(1, drop, RngHop::Target, RngTag::ConcatCoupling);
        return concatenate(sublink(a, 1, drop, RngHop::TxTarget), sublink(b, 1, drop, RngHop::TargetRx), k, r);
    }
}

TEST_CASE("polarization matrices")
{
    const Mat2c l = los_polarization(0.3);
    CHECK(l(0, 0) == std::polar(1.0, 0.3));
    CHECK(l(1, 1) == -std::polar(1.0, 0.3));
    CHECK(l(0, 1) == cdouble(0.0));

    const Mat2c x = xpr_polarization({4.0, {0.1, 0.2, 0.3, 0.4}});
    CHECK(std::abs(x(0, 1)) == doctest::Approx(0.5));
    CHECK(std::arg(x(1, 0)) == doctest::Approx(0.3));
    CHECK(xpr_polarization({std::numeric_limits<double>::infinity(), {}})(0, 1) == cdouble(0.0));

    // LOS on both hops with identity scattering: the two minus signs cancel.
    const Mat2c ll = polarization_matrix(ConditionPair::LL, std::nullopt, std::nullopt, Mat2c::identity(), 0.2, 0.5);
    CHECK(std::abs(ll(0, 0) - std::polar(1.0, 0.7)) < 1e-15);
    CHECK(std::abs(ll(1, 1) - std::polar(1.0, 0.7)) < 1e-15);
    CHECK_THROWS_AS(polarization_matrix(ConditionPair::NN, std::nullopt, std::nullopt, Mat2c::identity(), 0, 0),
                    DomainError);

    // Composition order: rx-side * S * tx-side.
    const RayPolarization rt{2.0, {0.1, -0.4, 0.9, 1.3}}, rr{5.0, {-1.1, 0.6, 0.2, -0.3}};
    const Mat2c s{{cdouble(0.5, 0.1), cdouble(0.2, 0), cdouble(0, 0.3), cdouble(0.7, -0.2)}};
    const Mat2c m = polarization_matrix(ConditionPair::NN, rt, rr, s, 0, 0);
    const Mat2c a = xpr_polarization(rr), b = xpr_polarization(rt);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
        {
            cdouble e = 0;
            for (int k = 0; k < 2; ++k)
                for (int q = 0; q < 2; ++q)
                    e += a(i, k) * s(k, q) * b(q, j);
            CHECK(std::abs(m(i, j) - e) < 1e-15);
        }
}

TEST_CASE("mono-static closing target: f_d = 2 v / lambda")
{
    const double v = 10.0;
    const Vec3 tx{0, 0, 10}, tg{100, 0, 10};
    const auto out = angles_between(tx, tg), back = angles_between(tg, tx);
    const double fd = doppler_frequency(out, back, back, back, {}, {}, {-v, 0, 0}, kLambda);
    CHECK(fd == doctest::Approx(2 * v / kLambda).epsilon(1e-14));
    // Receding target: negative shift.
    CHECK(doppler_frequency(out, back, back, back, {}, {}, {v, 0, 0}, kLambda) ==
          doctest::Approx(-2 * v / kLambda).epsilon(1e-14));
}

TEST_CASE("bi-static Doppler equals the negative path-length rate")
{
    RandomStream r(12, 0, RngHop::Test, RngTag::User);
    for (int i = 0; i < 200; ++i)
    {
        const Vec3 tx{r.uniform(-50, 50), r.uniform(-50, 50), r.uniform(5, 25)};
        const Vec3 rx{r.uniform(100, 200), r.uniform(-50, 50), r.uniform(5, 25)};
        const Vec3 tg{r.uniform(20, 80), r.uniform(20, 80), r.uniform(0, 5)};
        const Vec3 vt{r.uniform(-3, 3), r.uniform(-3, 3), 0}, vr{r.uniform(-3, 3), 0, 0};
        const Vec3 vs{r.uniform(-20, 20), r.uniform(-20, 20), r.uniform(-1, 1)};
        const double h = 1e-4;
        auto len = [&](double t) { return path_length(tx + t * vt, tg + t * vs, rx + t * vr); };
        const double rate = (len(h) - len(-h)) / (2 * h);
        const double fd = doppler_frequency(angles_between(tx, tg), angles_between(rx, tg), angles_between(tg, tx),
                                            angles_between(tg, rx), vt, vr, vs, kLambda);
        CHECK(std::abs(fd + rate / kLambda) < 1e-6);
    }
}

TEST_CASE("single path against a hand-built phasor")
{
    const auto txa = uniform_linear_array(2, kLambda / 2, ArrayAxis::Y);
    const auto rxa = uniform_linear_array(3, kLambda / 2, ArrayAxis::X);
    PathDescriptor p;
    p.amplitude = 0.37;
    p.tx_direction = {1.1, 0.4};
    p.rx_direction = {1.7, -2.2};
    p.doppler_hz = 123.0;
    const SnapshotGrid grid{0.002, 1e-3, 3};
    for (auto exec : {Execution::Serial, Execution::Parallel})
    {
        const auto cir = synthesize_cir({p}, txa, rxa, grid, kLambda, exec);
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t s = 0; s < 2; ++s)
                for (int t = 0; t < 3; ++t)
                {
                    const double k0 = 2 * std::numbers::pi / kLambda;
                    const double ph = k0 * unit(1.7, -2.2).dot(rxa[u].position) +
                                      k0 * unit(1.1, 0.4).dot(txa[s].position) +
                                      2 * std::numbers::pi * 123.0 * (0.002 + 1e-3 * t);
                    CHECK(std::abs(cir.at(u, s, 0, std::size_t(t)) - std::polar(0.37, ph)) < 1e-13);
                }
    }
}

TEST_CASE("serial reference and parallel kernel agree to 1e-12")
{
    const auto set = pathset(ConcatCase::Case1, LinkCondition::LOS, LinkCondition::NLOS, 3);
    NodeState tx = node({0, 0, 10}), rx = node({200, 0, 10}), tg = node({100, 50, 1.5}, {1, 0.5, 0});
    tx.array = uniform_linear_array(4, kLambda / 2, ArrayAxis::Y, {{}, {}, ElementPattern::Sectorized38901, 0.3});
    rx.array = uniform_linear_array(3, kLambda / 2, ArrayAxis::Y, {{}, {kPi, 0.1, 0}, ElementPattern::Isotropic, -0.7});
    RcsModel rcs;
    rcs.sigma_db = 3.0;
    const PolarizationConfig pol{PolarizationMode::Full, {0.9, 0.2, 0.3, 0.8}};
    const RngContext ctx{1, 3, RngHop::Target};
    const SnapshotGrid grid{0.0, 5e-4, 4};
    const auto a = synthesize_target_cir(set, tx, rx, tg, rcs, pol, grid, kLambda, ctx, 1.0, Execution::Serial);
    const auto b = synthesize_target_cir(set, tx, rx, tg, rcs, pol, grid, kLambda, ctx, 1.0, Execution::Parallel);
    REQUIRE(a.gains.size() == b.gains.size());
    CHECK(a.gains.size() == 4u * 3u * set.paths.size() * 4u);
    CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("path power with unit RCS and vertical isotropic elements")
{
    // With infinite XPR on every ray all polarization matrices are diagonal with unit-modulus
    // entries, so each condition pair carries exactly its K-weighted share of unit power.
    auto a = sublink(LinkCondition::LOS, 1, 0, RngHop::TxTarget);
    auto b = sublink(LinkCondition::LOS, 1, 0, RngHop::TargetRx);
    for (auto *h : {&a, &b})
        for (auto &c : h->clusters)
            for (auto &r : c.rays)
                r.xpr = std::numeric_limits<double>::infinity();
    RandomStream rng(1, 0, RngHop::Target, RngTag::ConcatCoupling);
    const auto set = concatenate(a, b, ConcatCase::Case0, rng);
    const NodeState tx = node({0, 0, 10}), rx = node({200, 0, 10}), tg = node({100, 50, 1.5});
    const auto cir = synthesize_target_cir(set, tx, rx, tg, RcsModel{}, {}, SnapshotGrid{}, kLambda, {1, 0, RngHop::Target});
    const auto &k = set.k_weights;
    CHECK(cir_power(cir, 0, ConditionPair::LL) == doctest::Approx(k.ll * k.ll).epsilon(1e-12));
    CHECK(cir_power(cir, 0, ConditionPair::LN) == doctest::Approx(k.ln * k.ln).epsilon(1e-12));
    CHECK(cir_power(cir, 0, ConditionPair::NL) == doctest::Approx(k.nl * k.nl).epsilon(1e-12));
    CHECK(cir_power(cir, 0, ConditionPair::NN) == doctest::Approx(k.nn * k.nn).epsilon(1e-12));
    CHECK(cir_power(cir, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Doppler phase advances between snapshots")
{
    const auto set = pathset(ConcatCase::Case2O, LinkCondition::NLOS, LinkCondition::NLOS, 5);
    const NodeState tx = node({0, 0, 10}), rx = node({200, 0, 10}), tg = node({100, 50, 1.5}, {3, -2, 0});
    const SnapshotGrid grid{0.0, 1e-3, 2};
    const auto cir = synthesize_target_cir(set, tx, rx, tg, RcsModel{}, {}, grid, kLambda, {1, 5, RngHop::Target});
    for (std::size_t p = 0; p < cir.n_paths(); p += 37)
    {
        const cdouble ratio = cir.at(0, 0, p, 1) / cir.at(0, 0, p, 0);
        CHECK(std::abs(ratio - std::polar(1.0, 2 * kPi * cir.paths[p].doppler_hz * 1e-3)) < 1e-9);
    }
}

TEST_CASE("background channel power equals the large-scale gain")
{
    const NodeState tx = node({0, 0, 10}), rx = node({200, 0, 10});
    for (auto c : {LinkCondition::LOS, LinkCondition::NLOS})
        for (std::uint32_t d = 0; d < 5; ++d)
        {
            const auto bg = synthesize_background_cir(tx, rx, umi6(), {}, {9, d, RngHop::TxTarget},
                                                      SensingMode::Bistatic, c);
            const double g = std::pow(10.0, -(bg.sublink.hop.path_loss_db + bg.sublink.hop.shadow_fading_db) / 10);
            CHECK(cir_power(bg.cir) == doctest::Approx(g).epsilon(1e-12));
            CHECK(bg.sublink.hop.condition == c);
        }
    CHECK_THROWS_AS(synthesize_background_cir(tx, tx, umi6(), {}, {9, 0, RngHop::TxTarget}, SensingMode::Monostatic),
                    UnsupportedFeature);
}

TEST_CASE("combining target and background")
{
    const auto set = pathset(ConcatCase::Case2O, LinkCondition::NLOS, LinkCondition::NLOS, 2);
    const NodeState tx = node({0, 0, 10}), rx = node({200, 0, 10}), tg = node({100, 50, 1.5});
    const auto t = synthesize_target_cir(set, tx, rx, tg, RcsModel{}, {}, {}, kLambda, {1, 2, RngHop::Target});
    const auto b = synthesize_background_cir(tx, rx, umi6(), {}, {1, 2, RngHop::Target}).cir;
    const double pt = cir_power(t), pb = cir_power(b);

    CouplingConfig c;
    c.o_isac = 0.0;
    auto x = combine_channels(t, b, c);
    CHECK(x.n_paths() == t.n_paths());
    CHECK(cir_power(x) == doctest::Approx(pt));

    c.o_isac = 0.25;
    x = combine_channels(t, b, c);
    CHECK(x.n_paths() == t.n_paths() + b.n_paths());
    CHECK(cir_power(x) == doctest::Approx(pt + 0.25 * pb).epsilon(1e-12));

    c.o_isac = 1.0;
    c.mode = CombinationMode::TargetEmbeddedInBackground;
    c.removal_fraction = 0.5;
    x = combine_channels(t, b, c);
    CHECK(x.n_paths() == t.n_paths() + b.n_paths() - b.n_paths() / 2);
    CHECK(cir_power(x) < pt + pb);

    c.removal_fraction = 1.5;
    CHECK_THROWS_AS(combine_channels(t, b, c), DomainError);
}

TEST_CASE("snapshot grid validation")
{
    CHECK_THROWS_AS((SnapshotGrid{0, 1e-3, 0}).validate(), ConfigError);
    CHECK_THROWS_AS((SnapshotGrid{0, 0, 2}).validate(), ConfigError);
    CHECK_THROWS_AS(synthesize_cir({}, {}, {AntennaElement{}}, {}, kLambda), DomainError);
}
