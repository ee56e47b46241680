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

#include "isac/geometry.hpp"

#include "isac/error.hpp"

#include <algorithm>

namespace isac
{
    double wrap_azimuth(double rad)
    {
        double w = std::remainder(rad, 2.0 * kPi); // [-pi, pi]
        if (w <= -kPi)
        {
            w += 2.0 * kPi;
        }
        return w;
    }

    Vec3 spherical_unit_vector(DirectionAngles a)
    {
        const double st = std::sin(a.zenith);
        return {st * std::cos(a.azimuth), st * std::sin(a.azimuth), std::cos(a.zenith)};
    }

    DirectionAngles angles_between(Vec3 a, Vec3 b)
    {
        const Vec3 d = b - a;
        const double r = d.norm();
        if (!(r > 0.0))
        {
            throw DomainError("degenerate geometry: coincident points");
        }
        const double zen = std::acos(std::clamp(d.z / r, -1.0, 1.0));
        double az = (d.x == 0.0 && d.y == 0.0) ? 0.0 : std::atan2(d.y, d.x);
        return {zen, wrap_azimuth(az)};
    }

    double element_power_gain(ElementPattern pattern, double zen, double az)
    {
        if (pattern == ElementPattern::Isotropic)
        {
            return 1.0;
        }
        // 3GPP single-element sectorized pattern
        constexpr double hpbw = 65.0, sla_v = 30.0, a_max = 30.0, g_max_db = 8.0;
        const double zen_deg = zen / kDeg;
        const double az_deg = wrap_azimuth(az) / kDeg;
        const double a_v = -std::min(12.0 * std::pow((zen_deg - 90.0) / hpbw, 2), sla_v);
        const double a_h = -std::min(12.0 * std::pow(az_deg / hpbw, 2), a_max);
        const double a_db = -std::min(-(a_v + a_h), a_max) + g_max_db;
        return std::pow(10.0, a_db / 10.0);
    }

    FieldPattern field_components(const AntennaElement &element, DirectionAngles dir)
    {
        const double zeta = element.polarization_slant;
        if (element.pattern == ElementPattern::Isotropic && element.orientation.bearing == 0.0 &&
            element.orientation.downtilt == 0.0 && element.orientation.slant == 0.0)
        {
            return {std::cos(zeta), std::sin(zeta)};
        }

        // Global -> local angles and the polarization rotation angle psi of the 3GPP element model
        const double al = element.orientation.bearing;
        const double be = element.orientation.downtilt;
        const double ga = element.orientation.slant;
        const double th = dir.zenith;
        const double dp = dir.azimuth - al;
        const double sb = std::sin(be), cb = std::cos(be), sg = std::sin(ga), cg = std::cos(ga);
        const double st = std::sin(th), ct = std::cos(th), sp = std::sin(dp), cp = std::cos(dp);

        const double zen_local = std::acos(std::clamp(cb * cg * ct + (sb * cg * cp - sg * sp) * st, -1.0, 1.0));
        const double az_local = std::atan2(cb * sg * ct + (sb * sg * cp + cg * sp) * st, cb * st * cp - sb * ct);
        const double psi = std::atan2(sg * cp + sb * cg * sp, sg * ct * sp + cg * (cb * st - sb * ct * cp));

        const double amp = std::sqrt(element_power_gain(element.pattern, zen_local, az_local));
        const double f_th = amp * std::cos(zeta);
        const double f_ph = amp * std::sin(zeta);
        const double cps = std::cos(psi), sps = std::sin(psi);
        return {cps * f_th - sps * f_ph, sps * f_th + cps * f_ph};
    }

    std::vector<AntennaElement> uniform_linear_array(int count, double spacing, ArrayAxis axis,
                                                     const AntennaElement &element)
    {
        if (count < 1)
            throw DomainError("uniform_linear_array: count must be >= 1");
        std::vector<AntennaElement> out(std::size_t(count), element);
        const double centre = 0.5 * double(count - 1);
        for (int i = 0; i < count; ++i)
        {
            const double off = (double(i) - centre) * spacing;
            Vec3 p{};
            (axis == ArrayAxis::X ? p.x : axis == ArrayAxis::Y ? p.y : p.z) = off;
            out[std::size_t(i)].position = element.position + p;
        }
        return out;
    }
}
