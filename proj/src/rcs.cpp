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

#include "isac/rcs.hpp"

#include "isac/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace isac
{
    std::string_view to_string(TargetClass c)
    {
        switch (c)
        {
        case TargetClass::Human:
            return "human";
        case TargetClass::Uav:
            return "uav";
        case TargetClass::Vehicle:
            return "vehicle";
        case TargetClass::Agv:
            return "agv";
        }
        return "?";
    }

    TargetClass parse_target_class(std::string_view s)
    {
        for (auto c : {TargetClass::Human, TargetClass::Uav, TargetClass::Vehicle, TargetClass::Agv})
            if (to_string(c) == s)
                return c;
        throw ConfigError("unknown target class '" + std::string(s) + "' (expected human, uav, vehicle, agv)");
    }

    double B1Pattern::at(double deg) const
    {
        if (is_constant())
            return 1.0;
        if (deg < angle_deg.front() || deg > angle_deg.back())
            throw DomainError("B1 table does not cover incident angle " + std::to_string(deg) + " deg");
        const auto hi = std::size_t(std::lower_bound(angle_deg.begin(), angle_deg.end(), deg) - angle_deg.begin());
        if (angle_deg[hi] == deg)
            return gain[hi];
        const std::size_t lo = hi - 1;
        const double t = (deg - angle_deg[lo]) / (angle_deg[hi] - angle_deg[lo]);
        return gain[lo] + t * (gain[hi] - gain[lo]);
    }

    B1Pattern parse_b1_table(std::string_view text, std::string_view source)
    {
        B1Pattern p;
        std::istringstream in{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            std::istringstream fields(line);
            double a = 0.0, g = 0.0;
            if (!(fields >> a))
                continue; // blank line
            std::string rest;
            if (!(fields >> g) || (fields >> rest))
                throw ConfigError(std::string(source) + ":" + std::to_string(lineno) +
                                  ": expected 'angle_deg gain'");
            if (!std::isfinite(a) || !(g > 0.0) || !std::isfinite(g))
                throw ConfigError(std::string(source) + ":" + std::to_string(lineno) +
                                  ": gain must be positive and finite");
            if (!p.angle_deg.empty() && a <= p.angle_deg.back())
                throw ConfigError(std::string(source) + ":" + std::to_string(lineno) +
                                  ": angles must be strictly increasing");
            p.angle_deg.push_back(a);
            p.gain.push_back(g);
        }
        if (p.angle_deg.size() == 1)
            throw ConfigError(std::string(source) + ": a B1 table needs at least two rows");
        return p;
    }

    B1Pattern load_b1_table(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw ConfigError("cannot open B1 table '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse_b1_table(ss.str(), path);
    }

    void RcsModel::validate() const
    {
        if (!(a_m2 > 0.0) || !std::isfinite(a_m2))
            throw ConfigError("rcs.A: RCS mean must be positive");
        if (!(sigma_db >= 0.0) || !std::isfinite(sigma_db))
            throw ConfigError("rcs.sigma_db must be nonnegative");
        if (!std::isfinite(mu_db))
            throw ConfigError("rcs.mu_db must be finite");
    }

    double b1_angle_deg(DirectionAngles incident) { return wrap_azimuth(incident.azimuth) / kDeg; }

    double sample_small_scale_rcs(const RcsModel &model, DirectionAngles incident, RandomStream &rng)
    {
        const double x = rng.normal(model.mu_db, model.sigma_db);
        return model.b1.at(b1_angle_deg(incident)) * std::pow(10.0, x / 10.0);
    }

    double sample_rcs(const RcsModel &model, DirectionAngles incident, RandomStream &rng)
    {
        return model.a_m2 * sample_small_scale_rcs(model, incident, rng);
    }

    LognormalFit fit_lognormal_db(const std::vector<double> &samples)
    {
        if (samples.size() < 2)
            throw DomainError("fit_lognormal_db needs at least 2 samples");
        // Welford, so constant data gives exactly zero spread.
        double mean = 0.0, m2 = 0.0;
        std::size_t n = 0;
        for (double s : samples)
        {
            if (!(s > 0.0) || !std::isfinite(s))
                throw DomainError("fit_lognormal_db: samples must be positive");
            const double x = 10.0 * std::log10(s);
            ++n;
            const double d = x - mean;
            mean += d / double(n);
            m2 += d * (x - mean);
        }
        return {mean, std::sqrt(m2 / double(n - 1))};
    }

    double mbet_bistatic(const MonoStaticRcs &mono, double f, double aspect, double beta, const MbetLimits &lim,
                         bool *warned)
    {
        if (std::abs(beta) > lim.max_beta_rad)
            throw DomainError("MBET validity exceeded: |beta| = " + std::to_string(std::abs(beta) / kDeg) +
                              " deg > " + std::to_string(lim.max_beta_rad / kDeg) + " deg");
        if (warned)
            *warned = std::abs(beta) > lim.warn_beta_rad;
        return mono(f * std::cos(beta / 2.0), aspect);
    }

    double ResolutionCell::volume(double c) const
    {
        return solid_angle_sr * range_m * range_m * c * pulse_width_s / 2.0;
    }

    bool is_point_target(const ResolutionCell &cell, double extent)
    {
        if (cell.solid_angle_sr < 0.0 || cell.range_m < 0.0 || cell.pulse_width_s < 0.0 || extent < 0.0)
            throw DomainError("is_point_target: inputs must be nonnegative");
        return extent <= cell.volume();
    }

    std::string_view to_string(PolarizationMode m)
    {
        switch (m)
        {
        case PolarizationMode::Identity:
            return "identity";
        case PolarizationMode::Full:
            return "full";
        case PolarizationMode::Partial:
            return "partial";
        }
        return "?";
    }

    PolarizationMode parse_polarization_mode(std::string_view s)
    {
        for (auto m : {PolarizationMode::Identity, PolarizationMode::Full, PolarizationMode::Partial})
            if (to_string(m) == s)
                return m;
        throw ConfigError("unknown polarization mode '" + std::string(s) + "' (expected identity, full, partial)");
    }

    std::array<double, 4> effective_alphas(PolarizationMode mode, const std::array<double, 4> &a)
    {
        switch (mode)
        {
        case PolarizationMode::Identity:
            return {1.0, 0.0, 0.0, 1.0};
        case PolarizationMode::Partial:
            return {1.0, a[1], a[2], 1.0};
        case PolarizationMode::Full:
            return a;
        }
        return a;
    }

    PolarizationScattering draw_polarization_scattering(PolarizationMode mode, const std::array<double, 4> &alphas,
                                                        RandomStream &rng)
    {
        PolarizationScattering ps;
        ps.mode = mode;
        ps.alphas = effective_alphas(mode, alphas);
        if (mode != PolarizationMode::Identity)
            for (auto &p : ps.phases)
                p = wrap_azimuth(rng.uniform(-kPi, kPi));
        return ps;
    }

    Mat2c scattering_matrix(const PolarizationScattering &ps)
    {
        const auto a = effective_alphas(ps.mode, ps.alphas);
        Mat2c s;
        for (std::size_t i = 0; i < 4; ++i)
            s.m[i] = a[i] == 0.0 ? cdouble(0.0) : std::polar(a[i], ps.phases[i]);
        return s;
    }
}
