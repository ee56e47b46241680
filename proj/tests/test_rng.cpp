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

#include "isac/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace isac;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    // Reference outputs published with the Random123 distribution (kat_vectors).
    auto r = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
    CHECK(r == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

    r = Philox4x32::encrypt({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    CHECK(r == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});

    r = Philox4x32::encrypt({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    CHECK(r == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are addressed by (seed, drop, hop, tag), not by call order")
{
    RandomStream a(7, 3, RngHop::TxTarget, RngTag::Phases);
    RandomStream b(7, 3, RngHop::TxTarget, RngTag::Phases);
    std::vector<std::uint64_t> va, vb;
    for (int i = 0; i < 100; ++i)
        va.push_back(a.next_u64());
    // Interleave draws from an unrelated stream; b must be unaffected.
    RandomStream other(7, 3, RngHop::TxTarget, RngTag::Xpr);
    for (int i = 0; i < 100; ++i)
    {
        other.next_u64();
        vb.push_back(b.next_u64());
    }
    CHECK(va == vb);

    std::set<std::uint64_t> firsts;
    for (std::uint32_t drop = 0; drop < 4; ++drop)
        for (auto hop : {RngHop::TxTarget, RngHop::TargetRx, RngHop::Background})
            for (auto tag : {RngTag::ClusterDelays, RngTag::ClusterPowers, RngTag::Azimuths})
                firsts.insert(RandomStream(1, drop, hop, tag).next_u64());
    CHECK(firsts.size() == 4 * 3 * 3);
    CHECK(RandomStream(1, 0, RngHop::TxTarget, RngTag::Azimuths).next_u64() !=
          RandomStream(2, 0, RngHop::TxTarget, RngTag::Azimuths).next_u64());
}

TEST_CASE("seek reproduces the sequence from any position")
{
    RandomStream a(99, 0, RngHop::Test, RngTag::User);
    std::vector<std::uint64_t> v;
    for (int i = 0; i < 9; ++i)
        v.push_back(a.next_u64());
    for (std::uint64_t k : {0u, 1u, 2u, 5u, 8u})
    {
        RandomStream b(99, 0, RngHop::Test, RngTag::User);
        b.seek(k);
        CHECK(b.next_u64() == v[k]);
    }
}

TEST_CASE("uniform, normal and bounded draws have the expected moments")
{
    RandomStream r(2024, 0, RngHop::Test, RngTag::User);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0;
    std::vector<int> counts(7, 0);
    for (int i = 0; i < n; ++i)
    {
        const double u = r.uniform();
        CHECK_UNARY(u >= 0.0);
        CHECK_UNARY(u < 1.0);
        su += u;
        const double z = r.normal();
        sn += z;
        sn2 += z * z;
        counts[r.below(7)]++;
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
    for (int c : counts)
        CHECK(double(c) / n == doctest::Approx(1.0 / 7.0).epsilon(0.03));
}

TEST_CASE("shuffle is a permutation and is seed-reproducible")
{
    std::vector<int> a(50), b(50);
    for (int i = 0; i < 50; ++i)
        a[i] = b[i] = i;
    RandomStream r1(5, 1, RngHop::Target, RngTag::ConcatCoupling);
    RandomStream r2(5, 1, RngHop::Target, RngTag::ConcatCoupling);
    r1.shuffle(std::span<int>(a));
    r2.shuffle(std::span<int>(b));
    CHECK(a == b);
    std::set<int> s(a.begin(), a.end());
    CHECK(s.size() == 50);
    bool moved = false;
    for (int i = 0; i < 50; ++i)
        moved |= a[i] != i;
    CHECK(moved);
}
