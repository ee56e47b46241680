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

#include "isac/geometry.hpp"

#include <array>

namespace isac
{
    // Row-major 2x2 complex matrix over (theta, phi) polarization components.
    struct Mat2c
    {
        std::array<cdouble, 4> m{};

        cdouble &operator()(int r, int c) { return m[std::size_t(2 * r + c)]; }
        const cdouble &operator()(int r, int c) const { return m[std::size_t(2 * r + c)]; }

        static Mat2c identity() { return {{cdouble(1.0), cdouble(0.0), cdouble(0.0), cdouble(1.0)}}; }
        static Mat2c diag(cdouble a, cdouble d) { return {{a, cdouble(0.0), cdouble(0.0), d}}; }

        friend Mat2c operator*(const Mat2c &a, const Mat2c &b)
        {
            Mat2c r;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
            return r;
        }
    };

    // rx^T * M * tx for field vectors rx = (F_theta, F_phi), tx likewise.
    inline cdouble bilinear(const FieldPattern &rx, const Mat2c &m, const FieldPattern &tx)
    {
        const cdouble v0 = m(0, 0) * tx.theta + m(0, 1) * tx.phi;
        const cdouble v1 = m(1, 0) * tx.theta + m(1, 1) * tx.phi;
        return rx.theta * v0 + rx.phi * v1;
    }
}
