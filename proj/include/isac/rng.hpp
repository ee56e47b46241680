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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <utility>

namespace isac
{
    // Philox4x32-10 block cipher (Salmon et al., SC'11). Counter-based: the output for a
    // given (key, counter) pair is fixed, so streams can be partitioned across threads
    // without changing any drawn value.
    struct Philox4x32
    {
        using Counter = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        static Counter encrypt(Counter ctr, Key key) noexcept
        {
            constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
            constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
            for (int round = 0; round < 10; ++round)
            {
                const std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
                const std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
                const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
                const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
                ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
                key[0] += W0;
                key[1] += W1;
            }
            return ctr;
        }
    };

    // Quantity tags: each randomly drawn quantity of a drop has its own stream so that
    // adding or reordering draws of one quantity never perturbs another.
    enum class RngTag : std::uint16_t
    {
        LinkCondition = 1,
        ShadowFading,
        KFactor,
        LargeScaleParams,
        ClusterDelays,
        ClusterPowers,
        Azimuths,
        Zeniths,
        RayCoupling,
        Xpr,
        Phases,
        AbsoluteDelay,
        ConcatCoupling,
        RcsFluctuation,
        TargetPolarization,
        User = 0x100,
    };

    // Hop indices used in stream keys.
    enum class RngHop : std::uint16_t
    {
        TxTarget = 0,
        TargetRx = 1,
        Background = 2,
        Target = 3,
        Test = 0xFFFF,
    };

    // One independent random stream keyed by (seed, drop, hop, tag).
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::uint32_t drop, RngHop hop, RngTag tag) noexcept
            : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
              stream_id_{drop, (std::uint32_t(hop) << 16) | std::uint32_t(tag)}
        {
        }

        std::uint64_t next_u64() noexcept
        {
            if (lane_ == 2)
            {
                refill();
            }
            const std::uint64_t v = (std::uint64_t(block_[2 * lane_ + 1]) << 32) | block_[2 * lane_];
            ++lane_;
            return v;
        }

        // Jump to the position that yields the index-th 64-bit output.
        void seek(std::uint64_t index) noexcept
        {
            counter_ = index / 2;
            refill();
            lane_ = int(index % 2);
            has_spare_ = false;
        }

        // Uniform on [0, 1).
        double uniform() noexcept { return double(next_u64() >> 11) * 0x1.0p-53; }

        // Uniform on the open interval (0, 1); safe for logarithms.
        double uniform_open() noexcept { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

        double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

        // Standard normal via Box-Muller; the second variate is cached.
        double normal() noexcept
        {
            if (has_spare_)
            {
                has_spare_ = false;
                return spare_;
            }
            const double r = std::sqrt(-2.0 * std::log(uniform_open()));
            const double a = 2.0 * std::numbers::pi * uniform();
            spare_ = r * std::sin(a);
            has_spare_ = true;
            return r * std::cos(a);
        }

        double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }

        // Uniform integer in [0, n), n > 0. Lemire's nearly-divisionless method.
        std::uint64_t below(std::uint64_t n) noexcept
        {
            __extension__ using u128 = unsigned __int128;
            u128 m = u128(next_u64()) * n;
            auto low = std::uint64_t(m);
            if (low < n)
            {
                const std::uint64_t threshold = (0 - n) % n;
                while (low < threshold)
                {
                    m = u128(next_u64()) * n;
                    low = std::uint64_t(m);
                }
            }
            return std::uint64_t(m >> 64);
        }

        // Random sign in {-1, +1}.
        double sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

        template <typename T>
        void shuffle(std::span<T> items) noexcept
        {
            for (std::size_t i = items.size(); i > 1; --i)
            {
                std::swap(items[i - 1], items[below(i)]);
            }
        }

    private:
        void refill() noexcept
        {
            block_ = Philox4x32::encrypt({std::uint32_t(counter_), std::uint32_t(counter_ >> 32), stream_id_[0], stream_id_[1]}, key_);
            ++counter_;
            lane_ = 0;
        }

        Philox4x32::Key key_;
        std::array<std::uint32_t, 2> stream_id_;
        std::uint64_t counter_ = 0;
        Philox4x32::Counter block_{};
        int lane_ = 2;
        bool has_spare_ = false;
        double spare_ = 0.0;
    };

    // Stream factory bound to one (seed, drop, hop).
    struct RngContext
    {
        std::uint64_t seed = 0;
        std::uint32_t drop = 0;
        RngHop hop = RngHop::TxTarget;

        RandomStream stream(RngTag tag) const noexcept { return RandomStream(seed, drop, hop, tag); }
        RngContext with_hop(RngHop h) const noexcept { return {seed, drop, h}; }
    };
}
