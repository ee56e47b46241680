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
#include <complex>
#include <vector>

namespace isac
{
    using cdouble = std::complex<double>;

    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kSpeedOfLight = 3.0e8; // m/s, value used throughout the model
    inline constexpr double kDeg = kPi / 180.0;

    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend bool operator==(const Vec3 &, const Vec3 &) = default;

        double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
        double norm() const { return std::sqrt(dot(*this)); }
        double norm_2d() const { return std::hypot(x, y); }
    };

    // Zenith in [0, pi], azimuth in (-pi, pi], radians. Global frame: right-handed, z up,
    // azimuth from +x toward +y.
    struct DirectionAngles
    {
        double zenith = 0.0;
        double azimuth = 0.0;

        friend bool operator==(const DirectionAngles &, const DirectionAngles &) = default;
    };

    // Wraps any angle into (-pi, pi].
    double wrap_azimuth(double rad);

    // Element orientation: bearing (about z), downtilt (about y'), slant (about x''), radians.
    struct Orientation
    {
        double bearing = 0.0;
        double downtilt = 0.0;
        double slant = 0.0;
    };

    enum class ElementPattern
    {
        Isotropic,
        Sectorized38901, // 65 deg HPBW, 30 dB limits, 8 dBi peak
    };

    struct AntennaElement
    {
        Vec3 position;                  // array-local offset, meters
        Orientation orientation;
        ElementPattern pattern = ElementPattern::Isotropic;
        double polarization_slant = 0.0; // radians; 0 = vertical
    };

    // Complex field pattern in global spherical coordinates.
    struct FieldPattern
    {
        cdouble theta;
        cdouble phi;
    };

    enum class NodeRole
    {
        Tx,
        Rx,
        Target,
    };

    struct NodeState
    {
        Vec3 position;
        Vec3 velocity;       // macro motion
        Vec3 micro_velocity; // micro motion; targets only, zero otherwise
        std::vector<AntennaElement> array{AntennaElement{}};
        NodeRole role = NodeRole::Tx;

        Vec3 total_velocity() const { return velocity + micro_velocity; }
    };

    // [sin(zen) cos(az), sin(zen) sin(az), cos(zen)]
    Vec3 spherical_unit_vector(DirectionAngles angles);

    // Direction of b - a. Throws DomainError("degenerate geometry") when a == b.
    DirectionAngles angles_between(Vec3 a, Vec3 b);

    // Zenith/azimuth field components of one element toward a global direction.
    FieldPattern field_components(const AntennaElement &element, DirectionAngles direction);

    enum class ArrayAxis
    {
        X,
        Y,
        Z,
    };

    // count copies of `element` spaced along one axis, centred on the array origin.
    std::vector<AntennaElement> uniform_linear_array(int count, double spacing_m, ArrayAxis axis,
                                                     const AntennaElement &element = {});

    // Element power gain (linear) in the element's local frame, angles in radians.
    double element_power_gain(ElementPattern pattern, double local_zenith, double local_azimuth);
}
