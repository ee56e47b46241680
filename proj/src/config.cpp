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

#include "isac/config.hpp"

#include "isac/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace isac
{
    std::vector<std::string> split_list(std::string_view text)
    {
        std::vector<std::string> out;
        std::string cur;
        auto flush = [&]
        {
            const auto b = cur.find_first_not_of(" \t");
            const auto e = cur.find_last_not_of(" \t");
            if (b != std::string::npos)
                out.push_back(cur.substr(b, e - b + 1));
            cur.clear();
        };
        for (char ch : text)
        {
            if (ch == ',')
                flush();
            else
                cur.push_back(ch);
        }
        flush();
        return out;
    }

    NodeState NodeConfig::node(NodeRole role, double wavelength) const
    {
        NodeState n;
        n.position = position;
        n.velocity = velocity;
        n.micro_velocity = micro_velocity;
        n.role = role;
        AntennaElement e;
        e.pattern = pattern;
        e.polarization_slant = slant_deg * kDeg;
        e.orientation = orientation;
        n.array = uniform_linear_array(array_count, spacing_wl * wavelength, axis, e);
        return n;
    }

    namespace
    {
        Vec3 vec3(const KeyValueFile &kv, const std::string &key, Vec3 fallback)
        {
            if (!kv.has(key))
                return fallback;
            const auto v = kv.numbers(key);
            if (v.size() != 3)
                throw ConfigError(kv.where(key) + key + ": expected three comma-separated numbers");
            for (double x : v)
                if (!std::isfinite(x))
                    throw ConfigError(kv.where(key) + key + ": components must be finite");
            return {v[0], v[1], v[2]};
        }

        std::optional<LinkCondition> condition(const KeyValueFile &kv, const std::string &key)
        {
            const std::string v = kv.text_or(key, "auto");
            if (v == "auto")
                return std::nullopt;
            if (v == "LOS")
                return LinkCondition::LOS;
            if (v == "NLOS")
                return LinkCondition::NLOS;
            throw ConfigError(kv.where(key) + key + ": expected auto, LOS or NLOS, got '" + v + "'");
        }

        template <typename F>
        auto wrap(const KeyValueFile &kv, const std::string &key, F f) -> decltype(f())
        {
            try
            {
                return f();
            }
            catch (const ConfigError &e)
            {
                const std::string msg = e.what();
                if (msg.find(key) != std::string::npos)
                    throw;
                throw ConfigError(kv.where(key) + key + ": " + msg);
            }
        }

        NodeConfig node(const KeyValueFile &kv, const std::string &name, NodeConfig d)
        {
            const std::string p = "nodes." + name + ".";
            d.position = vec3(kv, p + "position", d.position);
            d.velocity = vec3(kv, p + "velocity", d.velocity);
            d.micro_velocity = vec3(kv, p + "micro_velocity", d.micro_velocity);
            if (name != "target" && kv.has(p + "micro_velocity"))
                throw ConfigError(kv.where(p + "micro_velocity") + p + "micro_velocity: only the target node has micro motion");
            d.array_count = int(kv.integer_or(p + "array.count", d.array_count));
            if (d.array_count < 1 || d.array_count > 4096)
                throw ConfigError(kv.where(p + "array.count") + p + "array.count must be in [1, 4096]");
            d.spacing_wl = kv.number_or(p + "array.spacing_wl", d.spacing_wl);
            if (!(d.spacing_wl > 0.0))
                throw ConfigError(kv.where(p + "array.spacing_wl") + p + "array.spacing_wl must be positive");
            const std::string axis = kv.text_or(p + "array.axis", d.axis == ArrayAxis::X ? "x" : d.axis == ArrayAxis::Y ? "y" : "z");
            if (axis == "x")
                d.axis = ArrayAxis::X;
            else if (axis == "y")
                d.axis = ArrayAxis::Y;
            else if (axis == "z")
                d.axis = ArrayAxis::Z;
            else
                throw ConfigError(kv.where(p + "array.axis") + p + "array.axis: expected x, y or z");
            const std::string pat = kv.text_or(p + "array.pattern", "isotropic");
            if (pat == "isotropic")
                d.pattern = ElementPattern::Isotropic;
            else if (pat == "sectorized")
                d.pattern = ElementPattern::Sectorized38901;
            else
                throw ConfigError(kv.where(p + "array.pattern") + p + "array.pattern: expected isotropic or sectorized");
            d.slant_deg = kv.number_or(p + "array.slant_deg", d.slant_deg);
            if (kv.has(p + "array.orientation_deg"))
            {
                const auto o = kv.numbers(p + "array.orientation_deg");
                if (o.size() != 3)
                    throw ConfigError(kv.where(p + "array.orientation_deg") + p +
                                      "array.orientation_deg: expected bearing, downtilt, slant");
                d.orientation = {o[0] * kDeg, o[1] * kDeg, o[2] * kDeg};
            }
            return d;
        }
    }

    RunConfig reference_config(int drops, std::uint64_t seed)
    {
        RunConfig c;
        c.scenario = Scenario::UMi;
        c.frequency_hz = 6e9;
        c.sensing_mode = SensingMode::Bistatic;
        c.drops = drops;
        c.seed = seed;
        c.tx.position = {0.0, 0.0, 10.0};
        c.rx.position = {200.0, 0.0, 10.0};
        c.target.position = {100.0, 50.0, 1.5};
        return c;
    }

    RunConfig validate_config(const KeyValueFile &kv)
    {
        RunConfig c;
        if (!kv.has("frequency"))
            throw ConfigError("missing required key 'frequency' (carrier frequency in Hz)");
        c.scenario = wrap(kv, "scenario", [&] { return parse_scenario(kv.text_or("scenario", "UMi")); });
        c.frequency_hz = kv.number("frequency");
        if (!(c.frequency_hz > 0.0) || !std::isfinite(c.frequency_hz))
            throw ConfigError(kv.where("frequency") + "frequency must be a positive number of Hz");

        const std::string mode = kv.text_or("sensing_mode", "bistatic");
        if (mode == "bistatic")
            c.sensing_mode = SensingMode::Bistatic;
        else if (mode == "monostatic")
            c.sensing_mode = SensingMode::Monostatic;
        else
            throw ConfigError(kv.where("sensing_mode") + "sensing_mode: expected bistatic or monostatic, got '" + mode + "'");

        c.concat_case = wrap(kv, "concat_case", [&] { return parse_concat_case(kv.text_or("concat_case", "Case0")); });
        const long long drops = kv.integer_or("drops", 1);
        if (drops < 1 || drops > 100000000)
            throw ConfigError(kv.where("drops") + "drops must be in [1, 1e8], got " + std::to_string(drops));
        c.drops = int(drops);
        const long long seed = kv.integer_or("seed", 0);
        if (seed < 0)
            throw ConfigError(kv.where("seed") + "seed must be nonnegative");
        c.seed = std::uint64_t(seed);

        const RunConfig ref = reference_config();
        c.tx = node(kv, "tx", ref.tx);
        c.rx = node(kv, "rx", c.sensing_mode == SensingMode::Monostatic ? c.tx : ref.rx);
        c.target = node(kv, "target", ref.target);
        if (c.sensing_mode == SensingMode::Monostatic && !(c.rx.position == c.tx.position))
            throw ConfigError(kv.where("nodes.rx.position") + "nodes.rx.position: mono-static sensing needs co-located Tx and Rx");

        c.rcs.a_m2 = kv.number_or("rcs.A", 1.0);
        c.rcs.mu_db = kv.number_or("rcs.mu_db", 0.0);
        c.rcs.sigma_db = kv.number_or("rcs.sigma_db", 0.0);
        c.rcs.target_class = wrap(kv, "rcs.target_class", [&] { return parse_target_class(kv.text_or("rcs.target_class", "human")); });
        if (kv.has("rcs.b1_table"))
            c.rcs.b1 = load_b1_table(kv.text("rcs.b1_table"));
        wrap(kv, "rcs.A", [&] { c.rcs.validate(); });
        c.polarization.mode = wrap(kv, "rcs.polarization", [&] { return parse_polarization_mode(kv.text_or("rcs.polarization", "identity")); });
        if (kv.has("rcs.alpha"))
        {
            const auto a = kv.numbers("rcs.alpha");
            if (a.size() != 4)
                throw ConfigError(kv.where("rcs.alpha") + "rcs.alpha: expected four values VV, VH, HV, HH");
            for (std::size_t i = 0; i < 4; ++i)
            {
                if (!(a[i] >= 0.0) || !std::isfinite(a[i]))
                    throw ConfigError(kv.where("rcs.alpha") + "rcs.alpha: values must be finite and nonnegative");
                c.polarization.alphas[i] = a[i];
            }
        }

        c.snapshots.t0 = kv.number_or("snapshots.t0", 0.0);
        c.snapshots.dt = kv.number_or("snapshots.dt", 1e-3);
        c.snapshots.count = int(kv.integer_or("snapshots.count", 1));
        wrap(kv, "snapshots.count", [&] { c.snapshots.validate(); });

        c.coupling.o_isac = kv.number_or("coupling.o_isac", 1.0);
        if (!(c.coupling.o_isac >= 0.0) || !std::isfinite(c.coupling.o_isac))
            throw ConfigError(kv.where("coupling.o_isac") + "coupling.o_isac must be finite and nonnegative");
        const std::string cm = kv.text_or("coupling.mode", "added");
        if (cm == "added")
            c.coupling.mode = CombinationMode::TargetAddedToBackground;
        else if (cm == "embedded")
            c.coupling.mode = CombinationMode::TargetEmbeddedInBackground;
        else
            throw ConfigError(kv.where("coupling.mode") + "coupling.mode: expected added or embedded");
        c.coupling.removal_fraction = kv.number_or("coupling.removal_fraction", 0.0);
        if (!(c.coupling.removal_fraction >= 0.0 && c.coupling.removal_fraction <= 1.0))
            throw ConfigError(kv.where("coupling.removal_fraction") + "coupling.removal_fraction must lie in [0, 1]");

        c.condition_tx_target = condition(kv, "condition.tx_target");
        c.condition_target_rx = condition(kv, "condition.target_rx");
        c.condition_background = condition(kv, "condition.background");
        if (c.sensing_mode == SensingMode::Monostatic && kv.has("condition.target_rx"))
            throw ConfigError(kv.where("condition.target_rx") + "condition.target_rx: the mono-static return hop follows condition.tx_target");

        c.small_scale.subcluster_split = kv.boolean_or("small_scale.subcluster_split", false);
        c.small_scale.absolute_delay = kv.boolean_or("small_scale.absolute_delay", false);
        c.small_scale.nlos_excess_delay = kv.boolean_or("small_scale.nlos_excess_delay", false);
        const long long rays = kv.integer_or("small_scale.rays_per_cluster", 0);
        if (rays < 0 || rays > 1000)
            throw ConfigError(kv.where("small_scale.rays_per_cluster") + "small_scale.rays_per_cluster must be in [0, 1000] (0 = table value)");
        c.small_scale.rays_per_cluster = int(rays);

        c.background_enabled = kv.boolean_or("background.enabled", c.sensing_mode == SensingMode::Bistatic);
        c.write_cir = kv.boolean_or("output.cir", false);
        c.scenario_file = kv.text_or("scenario_file", "");

        if (kv.has("study.conditions"))
            for (const auto &s : split_list(kv.text("study.conditions")))
                c.study_conditions.push_back(wrap(kv, "study.conditions", [&] { return parse_condition_pair(s); }));

        kv.reject_unused();
        // Frequency and table validity are checked here so a bad carrier fails before any run.
        wrap(kv, "frequency", [&] { return resolve_scenario(c); });
        return c;
    }

    RunConfig validate_config(std::string_view text, std::string source_name)
    {
        RunConfig c = validate_config(KeyValueFile::parse(text, std::move(source_name)));
        c.source_text = std::string(text);
        return c;
    }

    RunConfig load_config(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw ConfigError("cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return validate_config(ss.str(), path);
    }

    ScenarioParams resolve_scenario(const RunConfig &cfg)
    {
        if (cfg.scenario_file.empty())
            return builtin_scenario(cfg.scenario, cfg.frequency_hz);
        return load_scenario(KeyValueFile::load(cfg.scenario_file), cfg.scenario, cfg.frequency_hz);
    }
}
