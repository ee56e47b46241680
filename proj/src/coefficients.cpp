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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace isac
{
    void SnapshotGrid::validate() const
    {
        if (count < 1)
            throw ConfigError("snapshots.count must be >= 1");
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw ConfigError("snapshots.dt must be positive");
        if (!std::isfinite(t0))
            throw ConfigError("snapshots.t0 must be finite");
    }

    Mat2c los_polarization(double phase)
    {
        const cdouble e = std::polar(1.0, phase);
        return Mat2c::diag(e, -e);
    }

    Mat2c xpr_polarization(const RayPolarization &r)
    {
        const double x = std::isinf(r.xpr) ? 0.0 : 1.0 / std::sqrt(r.xpr);
        return {{std::polar(1.0, r.phases[0]), std::polar(x, r.phases[1]), std::polar(x, r.phases[2]),
                 std::polar(1.0, r.phases[3])}};
    }

    Mat2c polarization_matrix(ConditionPair pair, const std::optional<RayPolarization> &tx,
                              const std::optional<RayPolarization> &rx, const Mat2c &s, double phase_tx,
                              double phase_rx)
    {
        const bool tx_los = pair == ConditionPair::LL || pair == ConditionPair::LN;
        const bool rx_los = pair == ConditionPair::LL || pair == ConditionPair::NL;
        if ((!tx_los && !tx) || (!rx_los && !rx))
            throw DomainError("polarization_matrix: NLOS side of a " + std::string(to_string(pair)) +
                              " path has no ray");
        const Mat2c left = rx_los ? los_polarization(phase_rx) : xpr_polarization(*rx);
        const Mat2c right = tx_los ? los_polarization(phase_tx) : xpr_polarization(*tx);
        return left * s * right;
    }

    double doppler_frequency(DirectionAngles tx_dir, DirectionAngles rx_dir, DirectionAngles sp_in,
                             DirectionAngles sp_out, Vec3 v_tx, Vec3 v_rx, Vec3 v_sp, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw DomainError("doppler_frequency: wavelength must be positive");
        const double s = spherical_unit_vector(rx_dir).dot(v_rx) + spherical_unit_vector(sp_out).dot(v_sp) +
                         spherical_unit_vector(tx_dir).dot(v_tx) + spherical_unit_vector(sp_in).dot(v_sp);
        return s / wavelength;
    }

    std::vector<PathDescriptor> target_path_descriptors(const TargetPathSet &set, const NodeState &tx,
                                                        const NodeState &rx, const NodeState &target,
                                                        const RcsModel &rcs, const PolarizationConfig &pol,
                                                        double wavelength, const RngContext &ctx,
                                                        double amplitude_scale)
    {
        const RngContext tctx = ctx.with_hop(RngHop::Target);
        RandomStream b2 = tctx.stream(RngTag::RcsFluctuation);
        RandomStream sp = tctx.stream(RngTag::TargetPolarization);
        const double phase_tx = -2.0 * kPi * set.los_distance_tx / wavelength;
        const double phase_rx = -2.0 * kPi * set.los_distance_rx / wavelength;
        const Vec3 v_sp = target.total_velocity();

        std::vector<PathDescriptor> out;
        out.reserve(set.paths.size());
        for (const auto &p : set.paths)
        {
            const double sigma = sample_small_scale_rcs(rcs, p.target_arrival, b2);
            const Mat2c s = scattering_matrix(draw_polarization_scattering(pol.mode, pol.alphas, sp));
            const bool tx_nlos = p.pair == ConditionPair::NL || p.pair == ConditionPair::NN;
            const bool rx_nlos = p.pair == ConditionPair::LN || p.pair == ConditionPair::NN;

            PathDescriptor d;
            d.delay = p.joint_delay;
            d.amplitude = amplitude_scale * set.k_weights.of(p.pair) * p.amplitude_weight * std::sqrt(sigma);
            d.polarization = polarization_matrix(p.pair, tx_nlos ? std::optional(p.tx_pol) : std::nullopt,
                                                 rx_nlos ? std::optional(p.rx_pol) : std::nullopt, s, phase_tx,
                                                 phase_rx);
            d.tx_direction = p.tx_departure;
            d.rx_direction = p.rx_arrival;
            d.doppler_hz = doppler_frequency(p.tx_departure, p.rx_arrival, p.target_arrival, p.target_departure,
                                             tx.total_velocity(), rx.total_velocity(), v_sp, wavelength);
            d.origin = PathOrigin::Target;
            d.pair = p.pair;
            out.push_back(d);
        }
        return out;
    }

    std::vector<PathDescriptor> background_path_descriptors(const SubLinkClusters &s, const NodeState &tx,
                                                            const NodeState &rx, double wavelength,
                                                            double amplitude_scale)
    {
        const double k = s.hop.k_factor;
        const bool los = s.los_ray.has_value();
        const double w_spec = !los ? 0.0 : std::isinf(k) ? 1.0 : std::sqrt(k / (k + 1.0));
        const double w_diff = !los ? 1.0 : std::isinf(k) ? 0.0 : std::sqrt(1.0 / (k + 1.0));
        const double g = std::sqrt(1.0 / total_cluster_power(s));
        const Vec3 zero{};

        auto make = [&](const Ray &r, double amp, const Mat2c &m, bool is_los)
        {
            PathDescriptor d;
            d.delay = r.delay;
            d.amplitude = amplitude_scale * amp;
            d.polarization = m;
            d.tx_direction = r.departure;
            d.rx_direction = r.arrival;
            d.doppler_hz = doppler_frequency(r.departure, r.arrival, r.arrival, r.departure, tx.total_velocity(),
                                             rx.total_velocity(), zero, wavelength);
            d.origin = PathOrigin::Background;
            d.los = is_los;
            return d;
        };

        std::vector<PathDescriptor> out;
        if (los)
            out.push_back(make(*s.los_ray, w_spec, los_polarization(-2.0 * kPi * s.hop.d3d / wavelength), true));
        for (const auto &c : s.clusters)
            for (const auto &r : c.rays)
                out.push_back(make(r, w_diff * g * r.amplitude_weight, xpr_polarization({r.xpr, r.phases}), false));
        return out;
    }

    namespace
    {
        void check_arrays(const std::vector<AntennaElement> &tx, const std::vector<AntennaElement> &rx, double wl,
                          const SnapshotGrid &grid)
        {
            if (tx.empty() || rx.empty())
                throw DomainError("synthesize_cir: antenna arrays must not be empty");
            if (!(wl > 0.0))
                throw DomainError("synthesize_cir: wavelength must be positive");
            grid.validate();
        }

        ChannelCir empty_cir(const std::vector<PathDescriptor> &paths, std::size_t n_tx, std::size_t n_rx,
                             const SnapshotGrid &grid)
        {
            ChannelCir cir;
            cir.n_rx = n_rx;
            cir.n_tx = n_tx;
            cir.grid = grid;
            cir.paths.reserve(paths.size());
            for (const auto &p : paths)
                cir.paths.push_back({p.delay, p.doppler_hz, p.origin, p.pair, p.los});
            cir.gains.assign(n_rx * n_tx * paths.size() * std::size_t(grid.count), cdouble(0.0));
            return cir;
        }

        // Direct term-by-term evaluation.
        ChannelCir synthesize_serial(const std::vector<PathDescriptor> &paths, const std::vector<AntennaElement> &txa,
                                     const std::vector<AntennaElement> &rxa, const SnapshotGrid &grid, double wl)
        {
            ChannelCir cir = empty_cir(paths, txa.size(), rxa.size(), grid);
            const double k0 = 2.0 * kPi / wl;
            for (std::size_t u = 0; u < rxa.size(); ++u)
                for (std::size_t s = 0; s < txa.size(); ++s)
                    for (std::size_t p = 0; p < paths.size(); ++p)
                    {
                        const auto &d = paths[p];
                        const FieldPattern frx = field_components(rxa[u], d.rx_direction);
                        const FieldPattern ftx = field_components(txa[s], d.tx_direction);
                        const cdouble arr_rx =
                            std::exp(cdouble(0.0, k0 * spherical_unit_vector(d.rx_direction).dot(rxa[u].position)));
                        const cdouble arr_tx =
                            std::exp(cdouble(0.0, k0 * spherical_unit_vector(d.tx_direction).dot(txa[s].position)));
                        for (int t = 0; t < grid.count; ++t)
                        {
                            const cdouble dop = std::exp(cdouble(0.0, 2.0 * kPi * d.doppler_hz * grid.time(t)));
                            cir.at(u, s, p, std::size_t(t)) =
                                bilinear(frx, d.polarization, ftx) * arr_rx * arr_tx * dop * d.amplitude;
                        }
                    }
            return cir;
        }

        // Precomputes element fields, array phases and Doppler phasors, then fills disjoint
        // (u, s) blocks in parallel.
        ChannelCir synthesize_parallel(const std::vector<PathDescriptor> &paths,
                                       const std::vector<AntennaElement> &txa, const std::vector<AntennaElement> &rxa,
                                       const SnapshotGrid &grid, double wl)
        {
            ChannelCir cir = empty_cir(paths, txa.size(), rxa.size(), grid);
            const std::size_t np = paths.size(), ns = txa.size(), nu = rxa.size(), nt = std::size_t(grid.count);
            const double k0 = 2.0 * kPi / wl;

            // Field vector times array phase, per (path, element).
            std::vector<FieldPattern> ftx(np * ns), frx(np * nu);
            std::vector<cdouble> dop(np * nt);
            const auto n_paths = static_cast<std::ptrdiff_t>(np);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t pi = 0; pi < n_paths; ++pi)
            {
                const auto p = std::size_t(pi);
                const auto &d = paths[p];
                const Vec3 rt = spherical_unit_vector(d.tx_direction);
                const Vec3 rr = spherical_unit_vector(d.rx_direction);
                for (std::size_t s = 0; s < ns; ++s)
                {
                    const FieldPattern f = field_components(txa[s], d.tx_direction);
                    const cdouble a = std::polar(1.0, k0 * rt.dot(txa[s].position));
                    ftx[p * ns + s] = {f.theta * a, f.phi * a};
                }
                for (std::size_t u = 0; u < nu; ++u)
                {
                    const FieldPattern f = field_components(rxa[u], d.rx_direction);
                    const cdouble a = std::polar(1.0, k0 * rr.dot(rxa[u].position));
                    frx[p * nu + u] = {f.theta * a, f.phi * a};
                }
                for (std::size_t t = 0; t < nt; ++t)
                    dop[p * nt + t] = std::polar(d.amplitude, 2.0 * kPi * d.doppler_hz * grid.time(int(t)));
            }

            const auto n_pairs = static_cast<std::ptrdiff_t>(nu * ns);
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t us = 0; us < n_pairs; ++us)
            {
                const std::size_t u = std::size_t(us) / ns, s = std::size_t(us) % ns;
                cdouble *out = &cir.gains[cir.index(u, s, 0, 0)];
                for (std::size_t p = 0; p < np; ++p)
                {
                    const cdouble base = bilinear(frx[p * nu + u], paths[p].polarization, ftx[p * ns + s]);
                    const cdouble *ph = &dop[p * nt];
                    for (std::size_t t = 0; t < nt; ++t)
                        out[p * nt + t] = base * ph[t];
                }
            }
            return cir;
        }
    }

    ChannelCir synthesize_cir(const std::vector<PathDescriptor> &paths, const std::vector<AntennaElement> &tx_array,
                              const std::vector<AntennaElement> &rx_array, const SnapshotGrid &grid, double wavelength,
                              Execution exec)
    {
        check_arrays(tx_array, rx_array, wavelength, grid);
        ChannelCir cir = exec == Execution::Serial ? synthesize_serial(paths, tx_array, rx_array, grid, wavelength)
                                                   : synthesize_parallel(paths, tx_array, rx_array, grid, wavelength);
        for (const auto &g : cir.gains)
            if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
                throw NumericError("synthesize_cir: non-finite channel coefficient");
        return cir;
    }

    ChannelCir synthesize_target_cir(const TargetPathSet &paths, const NodeState &tx, const NodeState &rx,
                                     const NodeState &target, const RcsModel &rcs, const PolarizationConfig &pol,
                                     const SnapshotGrid &grid, double wavelength, const RngContext &ctx,
                                     double amplitude_scale, Execution exec)
    {
        const auto desc = target_path_descriptors(paths, tx, rx, target, rcs, pol, wavelength, ctx, amplitude_scale);
        ChannelCir cir = synthesize_cir(desc, tx.array, rx.array, grid, wavelength, exec);
        cir.link_condition = paths.link_condition;
        cir.k_weights = paths.k_weights;
        return cir;
    }

    BackgroundChannel synthesize_background_cir(const NodeState &tx, const NodeState &rx,
                                                const ScenarioParams &scenario, const SnapshotGrid &grid,
                                                const RngContext &ctx, SensingMode mode,
                                                std::optional<LinkCondition> forced, const SmallScaleOptions &options,
                                                Execution exec)
    {
        if (mode == SensingMode::Monostatic)
            throw UnsupportedFeature("mono-static background channel: no modeling methodology is defined for it; "
                                     "existing channel models cannot be directly repurposed (left as future work)");
        const RngContext bctx = ctx.with_hop(RngHop::Background);
        const HopLink hop = make_hop(tx, rx, scenario, forced, bctx);
        BackgroundChannel bg{generate_sublink(hop, scenario, bctx, options), {}};
        const double scale = std::pow(10.0, -(hop.path_loss_db + hop.shadow_fading_db) / 20.0);
        const double wl = scenario.wavelength();
        bg.cir = synthesize_cir(background_path_descriptors(bg.sublink, tx, rx, wl, scale), tx.array, rx.array, grid,
                                wl, exec);
        return bg;
    }

    ChannelCir combine_channels(const ChannelCir &target, const ChannelCir &background, const CouplingConfig &cfg)
    {
        if (target.n_rx != background.n_rx || target.n_tx != background.n_tx)
            throw DomainError("combine_channels: array sizes differ");
        if (!(target.grid == background.grid))
            throw DomainError("combine_channels: snapshot grids differ");
        if (!(cfg.o_isac >= 0.0) || !std::isfinite(cfg.o_isac))
            throw DomainError("combine_channels: O_isac must be finite and nonnegative");
        if (!(cfg.removal_fraction >= 0.0 && cfg.removal_fraction <= 1.0))
            throw DomainError("combine_channels: removal fraction must lie in [0, 1]");

        const std::size_t nb = background.n_paths(), nt = target.n_snapshots();
        std::vector<bool> keep(nb, cfg.o_isac > 0.0);
        if (cfg.mode == CombinationMode::TargetEmbeddedInBackground && cfg.o_isac > 0.0)
        {
            std::vector<double> power(nb, 0.0);
            for (std::size_t u = 0; u < background.n_rx; ++u)
                for (std::size_t s = 0; s < background.n_tx; ++s)
                    for (std::size_t p = 0; p < nb; ++p)
                        power[p] += std::norm(background.at(u, s, p, 0));
            std::vector<std::size_t> order(nb);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return power[a] > power[b]; });
            const auto removed = std::size_t(std::floor(cfg.removal_fraction * double(nb)));
            for (std::size_t i = 0; i < removed; ++i)
                keep[order[i]] = false;
        }

        ChannelCir out;
        out.n_rx = target.n_rx;
        out.n_tx = target.n_tx;
        out.grid = target.grid;
        out.link_condition = target.link_condition;
        out.k_weights = target.k_weights;
        out.paths = target.paths;
        std::vector<std::size_t> kept;
        for (std::size_t p = 0; p < nb; ++p)
            if (keep[p])
            {
                kept.push_back(p);
                out.paths.push_back(background.paths[p]);
            }
        out.gains.assign(out.n_rx * out.n_tx * out.n_paths() * nt, cdouble(0.0));
        const double g = std::sqrt(cfg.o_isac);
        for (std::size_t u = 0; u < out.n_rx; ++u)
            for (std::size_t s = 0; s < out.n_tx; ++s)
            {
                for (std::size_t p = 0; p < target.n_paths(); ++p)
                    for (std::size_t t = 0; t < nt; ++t)
                        out.at(u, s, p, t) = target.at(u, s, p, t);
                for (std::size_t i = 0; i < kept.size(); ++i)
                    for (std::size_t t = 0; t < nt; ++t)
                        out.at(u, s, target.n_paths() + i, t) = g * background.at(u, s, kept[i], t);
            }
        return out;
    }

    double cir_power(const ChannelCir &cir, std::size_t t, std::optional<ConditionPair> only)
    {
        if (t >= cir.n_snapshots())
            throw DomainError("cir_power: snapshot index out of range");
        double e = 0.0;
        for (std::size_t u = 0; u < cir.n_rx; ++u)
            for (std::size_t s = 0; s < cir.n_tx; ++s)
                for (std::size_t p = 0; p < cir.n_paths(); ++p)
                {
                    const auto &info = cir.paths[p];
                    if (only && (info.origin != PathOrigin::Target || info.pair != *only))
                        continue;
                    e += std::norm(cir.at(u, s, p, t));
                }
        return e;
    }
}
