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

#include "isac/runner.hpp"

#include "isac/error.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace isac
{
    namespace
    {
        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        // Shortest round-trip text for a double; locale independent.
        std::string num(double v)
        {
            std::array<char, 32> buf{};
            std::snprintf(buf.data(), buf.size(), "%.17g", v);
            return buf.data();
        }

        HopSummary summarize(const HopLink &h)
        {
            return {h.condition, h.d3d, h.path_loss_db, h.shadow_fading_db, h.k_factor};
        }

        const char *origin_name(PathOrigin o) { return o == PathOrigin::Target ? "target" : "background"; }

        std::ofstream open_out(const std::filesystem::path &p)
        {
            std::ofstream f(p, std::ios::binary);
            if (!f)
                throw ConfigError("cannot write output file '" + p.string() + "'");
            return f;
        }

        constexpr std::array<const char *, 6> kMetricNames = {"total_power", "ds_ns", "asa_deg",
                                                              "asd_deg", "zsa_deg", "zsd_deg"};

        double metric(const DropStatistics &s, std::size_t i)
        {
            switch (i)
            {
            case 0:
                return s.total_power;
            case 1:
                return s.ds * 1e9;
            case 2:
                return s.asa;
            case 3:
                return s.asd;
            case 4:
                return s.zsa;
            default:
                return s.zsd;
            }
        }

        void write_cdf_rows(std::ostream &os, const std::string &prefix, const std::string &metric_name,
                            const std::vector<double> &values)
        {
            const EmpiricalCdf c = empirical_cdf(values);
            for (std::size_t i = 0; i < c.values.size(); ++i)
                os << prefix << metric_name << '\t' << num(c.values[i]) << '\t' << num(c.probabilities[i]) << '\n';
        }

        void check_workers(int workers)
        {
            if (workers < 1 || workers > 1024)
                throw ConfigError("--workers must be in [1, 1024], got " + std::to_string(workers));
        }
    }

    DropContext::DropContext(const RunConfig &config)
        : cfg(config), scenario(resolve_scenario(config)),
          tx(config.tx.node(NodeRole::Tx, config.wavelength())),
          rx(config.rx.node(NodeRole::Rx, config.wavelength())),
          target(config.target.node(NodeRole::Target, config.wavelength()))
    {
    }

    DropResult simulate_drop(const DropContext &ctx, int drop, const DropOptions &opt)
    {
        const RunConfig &cfg = ctx.cfg;
        const RngContext base{cfg.seed, std::uint32_t(drop), RngHop::TxTarget};
        const RngContext c1 = base.with_hop(RngHop::TxTarget);
        const RngContext c2 = base.with_hop(RngHop::TargetRx);
        const bool mono = cfg.sensing_mode == SensingMode::Monostatic;

        // Large scale, per hop, then the concatenated path loss with the RCS mean.
        const auto f1 = opt.force_tx_target ? opt.force_tx_target : cfg.condition_tx_target;
        const auto f2 = opt.force_target_rx ? opt.force_target_rx : cfg.condition_target_rx;
        const HopLink h1 = make_hop(ctx.tx, ctx.target, ctx.scenario, f1, c1);
        const SubLinkClusters s1 = generate_sublink(h1, ctx.scenario, c1, cfg.small_scale);
        const SubLinkClusters s2 = mono ? mono_static_reciprocal(s1)
                                        : generate_sublink(make_hop(ctx.target, ctx.rx, ctx.scenario, f2, c2),
                                                           ctx.scenario, c2, cfg.small_scale);
        const HopLink &h2 = s2.hop;

        DropResult r;
        r.drop = drop;
        r.tx_target = summarize(h1);
        r.target_rx = summarize(h2);
        r.pl_target_db = concatenated_path_loss(h1.path_loss_db + h1.shadow_fading_db,
                                                h2.path_loss_db + h2.shadow_fading_db, cfg.frequency_hz, cfg.rcs.a_m2);

        // Every case starts from the same coupling stream, so an *N case and its base case
        // share the pairing.
        const RngContext tctx = base.with_hop(RngHop::Target);
        std::optional<TargetPathSet> first_set;
        for (ConcatCase cc : opt.cases)
        {
            RandomStream rng = tctx.stream(RngTag::ConcatCoupling);
            TargetPathSet set = concatenate(s1, s2, cc, rng);
            r.cases.push_back({drop_statistics(set), nn_total_power(set), set.paths.size()});
            if (opt.synthesize && !first_set)
                first_set = std::move(set);
        }

        if (opt.synthesize)
        {
            if (!first_set)
                throw DomainError("simulate_drop: synthesis needs at least one concatenation case");
            const double wl = cfg.wavelength();
            const ChannelCir target = synthesize_target_cir(*first_set, ctx.tx, ctx.rx, ctx.target, cfg.rcs,
                                                            cfg.polarization, cfg.snapshots, wl, base,
                                                            std::pow(10.0, -r.pl_target_db / 20.0), opt.exec);
            r.target_power = cir_power(target);
            double background_gain = 0.0;
            ChannelCir combined;
            if (cfg.background_enabled)
            {
                const BackgroundChannel bg =
                    synthesize_background_cir(ctx.tx, ctx.rx, ctx.scenario, cfg.snapshots, base, cfg.sensing_mode,
                                              cfg.condition_background, cfg.small_scale, opt.exec);
                r.background = summarize(bg.sublink.hop);
                background_gain = std::pow(10.0, -(bg.sublink.hop.path_loss_db + bg.sublink.hop.shadow_fading_db) / 10.0);
                r.background_power = cir_power(bg.cir);
                combined = combine_channels(target, bg.cir, cfg.coupling);
            }
            else
            {
                combined = target;
            }
            r.combined_power = cir_power(combined);
            r.pl_isac_db = -10.0 * std::log10(combine_isac_path_loss(std::pow(10.0, -r.pl_target_db / 10.0),
                                                                     background_gain, cfg.coupling));
            if (opt.keep_cir)
                r.cir = std::move(combined);
        }
        return r;
    }

    std::vector<DropResult> run_drops(const DropContext &ctx, int first, int count, const DropOptions &opt,
                                      int workers, Execution exec)
    {
        check_workers(workers);
        std::vector<DropResult> out(std::size_t(std::max(count, 0)));
        if (exec == Execution::Serial)
        {
            for (int i = 0; i < count; ++i)
                out[std::size_t(i)] = simulate_drop(ctx, first + i, opt);
            return out;
        }

        std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (int i = 0; i < count; ++i)
        {
            try
            {
                out[std::size_t(i)] = simulate_drop(ctx, first + i, opt);
            }
            catch (...)
            {
                errors[std::size_t(i)] = std::current_exception();
            }
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e); // lowest failing drop index wins
        return out;
    }

    std::filesystem::path make_run_directory(const std::filesystem::path &root, std::uint64_t seed)
    {
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::ostringstream name;
        name << std::put_time(&tm, "%Y%m%dT%H%M%SZ") << "-seed" << seed;
        std::filesystem::create_directories(root);
        std::filesystem::path dir = root / name.str();
        for (int k = 1; std::filesystem::exists(dir); ++k)
            dir = root / (name.str() + "-" + std::to_string(k));
        std::filesystem::create_directory(dir);
        return dir;
    }

    std::string sha256_file(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("cannot read '" + path.string() + "' for checksumming");
        EVP_MD_CTX *md = EVP_MD_CTX_new();
        if (!md || EVP_DigestInit_ex(md, EVP_sha256(), nullptr) != 1)
        {
            EVP_MD_CTX_free(md);
            throw NumericError("SHA-256 initialisation failed");
        }
        std::array<char, 1 << 16> buf{};
        while (f)
        {
            f.read(buf.data(), std::streamsize(buf.size()));
            if (f.gcount() > 0)
                EVP_DigestUpdate(md, buf.data(), std::size_t(f.gcount()));
        }
        std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(md, digest.data(), &len);
        EVP_MD_CTX_free(md);
        std::ostringstream hex;
        for (unsigned int i = 0; i < len; ++i)
            hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
        return hex.str();
    }

    void write_manifest(const RunManifest &m, const RunConfig *cfg, int workers)
    {
        nlohmann::ordered_json j;
        j["artifact"] = "isacsim";
        j["version"] = "0.1.0";
        j["command"] = m.command;
        if (cfg)
        {
            j["seed"] = cfg->seed;
            j["drops"] = cfg->drops;
            j["concat_case"] = std::string(to_string(cfg->concat_case));
            j["config"] = cfg->source_text;
        }
        j["workers"] = workers;
        auto &files = j["files"];
        files = nlohmann::ordered_json::object();
        for (const auto &[name, digest] : m.sha256)
            files[name] = {{"sha256", digest}, {"bytes", std::filesystem::file_size(m.directory / name)}};
        j["timings_s"] = m.timings_s;
        auto f = open_out(m.directory / "manifest.json");
        f << j.dump(2) << '\n';
    }

    std::vector<std::string> verify_manifest(const std::filesystem::path &dir)
    {
        std::ifstream f(dir / "manifest.json");
        if (!f)
            throw ConfigError("no manifest.json in '" + dir.string() + "'");
        const auto j = nlohmann::json::parse(f);
        std::vector<std::string> bad;
        for (const auto &[name, entry] : j.at("files").items())
        {
            const auto p = dir / name;
            if (!std::filesystem::exists(p) || sha256_file(p) != entry.at("sha256").get<std::string>())
                bad.push_back(name);
        }
        return bad;
    }

    namespace
    {
        void finish(RunManifest &m, const std::vector<std::string> &files)
        {
            for (const auto &name : files)
                m.sha256[name] = sha256_file(m.directory / name);
        }

        constexpr int kChunk = 256;
    }

    RunManifest run(const RunConfig &cfg, const std::filesystem::path &out_dir, int workers)
    {
        check_workers(workers);
        const auto t_start = Clock::now();
        const DropContext ctx(cfg);
        RunManifest m;
        m.command = "run";
        m.directory = out_dir;
        std::filesystem::create_directories(out_dir);

        DropOptions opt;
        opt.cases = {cfg.concat_case};
        opt.synthesize = true;
        opt.keep_cir = cfg.write_cir;

        auto stats = open_out(out_dir / "stats.tsv");
        stats << "drop\tcase\tcondition\ttotal_power\tnn_power\tn_paths\tds_ns\tasa_deg\tasd_deg\tzsa_deg\tzsd_deg\n";
        auto ls = open_out(out_dir / "large_scale.tsv");
        ls << "drop\tcond_tx_target\tcond_target_rx\td3d_tx_target_m\td3d_target_rx_m\tpl_tx_target_db\t"
              "sf_tx_target_db\tpl_target_rx_db\tsf_target_rx_db\tk_tx_target\tk_target_rx\tpl_target_db\t"
              "cond_background\tpl_background_db\tsf_background_db\tpl_isac_db\ttarget_power\t"
              "background_power\tcombined_power\n";
        std::ofstream cir;
        if (cfg.write_cir)
        {
            cir = open_out(out_dir / "cir.tsv");
            cir << "drop\tu\ts\tpath\torigin\tpair\tdelay_s\tdoppler_hz";
            for (int t = 0; t < cfg.snapshots.count; ++t)
                cir << "\tre_" << t << "\tim_" << t;
            cir << '\n';
        }

        std::vector<std::vector<double>> cdf_values(kMetricNames.size() + 1);
        double t_sim = 0.0, t_write = 0.0;
        for (int first = 0; first < cfg.drops; first += kChunk)
        {
            const int count = std::min(kChunk, cfg.drops - first);
            const auto t0 = Clock::now();
            const auto results = run_drops(ctx, first, count, opt, workers);
            t_sim += seconds_since(t0);
            const auto t1 = Clock::now();
            for (const auto &r : results)
            {
                const auto &c = r.cases.front();
                const auto &s = c.stats;
                stats << r.drop << '\t' << to_string(s.concat_case) << '\t' << to_string(s.condition) << '\t'
                      << num(s.total_power) << '\t' << num(c.nn_power) << '\t' << c.n_paths << '\t' << num(s.ds * 1e9)
                      << '\t' << num(s.asa) << '\t' << num(s.asd) << '\t' << num(s.zsa) << '\t' << num(s.zsd) << '\n';
                for (std::size_t i = 0; i < kMetricNames.size(); ++i)
                    cdf_values[i].push_back(metric(s, i));
                cdf_values.back().push_back(r.pl_target_db);

                ls << r.drop << '\t' << to_string(r.tx_target.condition) << '\t' << to_string(r.target_rx.condition)
                   << '\t' << num(r.tx_target.d3d) << '\t' << num(r.target_rx.d3d) << '\t'
                   << num(r.tx_target.path_loss_db) << '\t' << num(r.tx_target.shadow_fading_db) << '\t'
                   << num(r.target_rx.path_loss_db) << '\t' << num(r.target_rx.shadow_fading_db) << '\t'
                   << num(r.tx_target.k_factor) << '\t' << num(r.target_rx.k_factor) << '\t' << num(r.pl_target_db)
                   << '\t';
                if (r.background)
                    ls << to_string(r.background->condition) << '\t' << num(r.background->path_loss_db) << '\t'
                       << num(r.background->shadow_fading_db);
                else
                    ls << "none\tnan\tnan";
                ls << '\t' << num(r.pl_isac_db) << '\t' << num(r.target_power) << '\t' << num(r.background_power)
                   << '\t' << num(r.combined_power) << '\n';

                if (r.cir)
                {
                    const auto &h = *r.cir;
                    for (std::size_t u = 0; u < h.n_rx; ++u)
                        for (std::size_t sx = 0; sx < h.n_tx; ++sx)
                            for (std::size_t p = 0; p < h.n_paths(); ++p)
                            {
                                const auto &info = h.paths[p];
                                cir << r.drop << '\t' << u << '\t' << sx << '\t' << p << '\t' << origin_name(info.origin)
                                    << '\t' << (info.origin == PathOrigin::Target ? to_string(info.pair) : (info.los ? "LOS" : "NLOS"))
                                    << '\t' << num(info.delay) << '\t' << num(info.doppler_hz);
                                for (std::size_t t = 0; t < h.n_snapshots(); ++t)
                                {
                                    const cdouble g = h.at(u, sx, p, t);
                                    cir << '\t' << num(g.real()) << '\t' << num(g.imag());
                                }
                                cir << '\n';
                            }
                }
            }
            t_write += seconds_since(t1);
        }

        {
            auto cdf = open_out(out_dir / "cdf.tsv");
            cdf << "case\tmetric\tvalue\tprobability\n";
            const std::string prefix = std::string(to_string(cfg.concat_case)) + "\t";
            for (std::size_t i = 0; i < kMetricNames.size(); ++i)
                write_cdf_rows(cdf, prefix, kMetricNames[i], cdf_values[i]);
            write_cdf_rows(cdf, prefix, "pl_target_db", cdf_values.back());
        }
        stats.close();
        ls.close();
        std::vector<std::string> files = {"stats.tsv", "large_scale.tsv", "cdf.tsv"};
        if (cfg.write_cir)
        {
            cir.close();
            files.push_back("cir.tsv");
        }
        finish(m, files);
        m.timings_s = {{"simulate", t_sim}, {"write", t_write}, {"total", seconds_since(t_start)}};
        write_manifest(m, &cfg, workers);
        return m;
    }

    RunManifest concat_study(const RunConfig &cfg, const std::filesystem::path &out_dir, int workers)
    {
        check_workers(workers);
        const auto t_start = Clock::now();
        const DropContext ctx(cfg);
        RunManifest m;
        m.command = "concat-study";
        m.directory = out_dir;
        std::filesystem::create_directories(out_dir);

        struct Set
        {
            std::string label;
            std::optional<LinkCondition> tx, rx;
        };
        std::vector<Set> sets;
        if (cfg.study_conditions.empty())
            sets.push_back({"config", cfg.condition_tx_target, cfg.condition_target_rx});
        for (ConditionPair p : cfg.study_conditions)
        {
            const bool a = p == ConditionPair::LL || p == ConditionPair::LN;
            const bool b = p == ConditionPair::LL || p == ConditionPair::NL;
            if (cfg.sensing_mode == SensingMode::Monostatic && a != b)
                throw ConfigError("study.conditions: " + std::string(to_string(p)) +
                                  " is impossible in mono-static mode (the return hop is reciprocal)");
            sets.push_back({std::string(to_string(p)), a ? LinkCondition::LOS : LinkCondition::NLOS,
                            b ? LinkCondition::LOS : LinkCondition::NLOS});
        }

        auto stats = open_out(out_dir / "study_stats.tsv");
        stats << "conditions\tdrop\tcase\tcondition\ttotal_power\tnn_power\tpower_ratio_case0\tn_paths\tds_ns\t"
                 "asa_deg\tasd_deg\tzsa_deg\tzsd_deg\n";
        auto cdf = open_out(out_dir / "study_cdf.tsv");
        cdf << "conditions\tcase\tmetric\tvalue\tprobability\n";
        auto ks = open_out(out_dir / "study_ks.tsv");
        ks << "conditions\tcase\tmetric\tks_vs_case0\n";

        DropOptions opt;
        opt.cases.assign(kAllConcatCases.begin(), kAllConcatCases.end());
        const std::size_t n_cases = opt.cases.size();
        const std::size_t case0 = std::size_t(std::find(opt.cases.begin(), opt.cases.end(), ConcatCase::Case0) - opt.cases.begin());
        double t_sim = 0.0;
        for (const auto &set : sets)
        {
            opt.force_tx_target = set.tx;
            opt.force_target_rx = set.rx;
            // values[case][metric] over drops; metric index kMetricNames.size() is the power ratio
            std::vector<std::vector<std::vector<double>>> values(
                n_cases, std::vector<std::vector<double>>(kMetricNames.size() + 1));
            for (int first = 0; first < cfg.drops; first += kChunk)
            {
                const int count = std::min(kChunk, cfg.drops - first);
                const auto t0 = Clock::now();
                const auto results = run_drops(ctx, first, count, opt, workers);
                t_sim += seconds_since(t0);
                for (const auto &r : results)
                {
                    const double ref = r.cases[case0].nn_power;
                    for (std::size_t k = 0; k < n_cases; ++k)
                    {
                        const auto &c = r.cases[k];
                        const auto &s = c.stats;
                        const double ratio = ref > 0.0 ? c.nn_power / ref : std::nan("");
                        stats << set.label << '\t' << r.drop << '\t' << to_string(s.concat_case) << '\t'
                              << to_string(s.condition) << '\t' << num(s.total_power) << '\t' << num(c.nn_power)
                              << '\t' << num(ratio) << '\t' << c.n_paths << '\t' << num(s.ds * 1e9) << '\t'
                              << num(s.asa) << '\t' << num(s.asd) << '\t' << num(s.zsa) << '\t' << num(s.zsd) << '\n';
                        for (std::size_t i = 0; i < kMetricNames.size(); ++i)
                            values[k][i].push_back(metric(s, i));
                        if (!std::isnan(ratio))
                            values[k].back().push_back(ratio);
                    }
                }
            }
            for (std::size_t k = 0; k < n_cases; ++k)
            {
                const std::string prefix = set.label + "\t" + std::string(to_string(opt.cases[k])) + "\t";
                for (std::size_t i = 0; i < kMetricNames.size(); ++i)
                {
                    write_cdf_rows(cdf, prefix, kMetricNames[i], values[k][i]);
                    ks << prefix << kMetricNames[i] << '\t'
                       << num(ks_statistic(empirical_cdf(values[k][i]), empirical_cdf(values[case0][i]))) << '\n';
                }
                if (!values[k].back().empty())
                    write_cdf_rows(cdf, prefix, "power_ratio_case0", values[k].back());
            }
        }
        stats.close();
        cdf.close();
        ks.close();
        finish(m, {"study_stats.tsv", "study_cdf.tsv", "study_ks.tsv"});
        m.timings_s = {{"simulate", t_sim}, {"total", seconds_since(t_start)}};
        write_manifest(m, &cfg, workers);
        return m;
    }

    std::vector<DetectionRow> detection_table(double sigma, const std::vector<double> &pfas, double lo, double hi,
                                              double step)
    {
        if (!(step > 0.0) || !(hi >= lo))
            throw ConfigError("detect: need snr-max >= snr-min and a positive snr-step");
        if (pfas.empty())
            throw ConfigError("detect: at least one target pfa is required");
        std::vector<DetectionRow> rows;
        const auto n = int(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (double target : pfas)
        {
            const double vt = threshold_for_pfa(target, sigma);
            for (int i = 0; i < n; ++i)
            {
                const double snr = lo + step * double(i);
                const DetectionParams p{sigma, vt, amplitude_for_snr_db(snr, sigma)};
                rows.push_back({snr, target, vt, pfa(p), pd(p)});
            }
        }
        return rows;
    }

    RunManifest write_detection_table(const std::vector<DetectionRow> &rows, const std::filesystem::path &out_dir)
    {
        RunManifest m;
        m.command = "detect";
        m.directory = out_dir;
        std::filesystem::create_directories(out_dir);
        {
            auto f = open_out(out_dir / "detect.tsv");
            f << "snr_db\ttarget_pfa\tthreshold\tpfa\tpd\n";
            for (const auto &r : rows)
                f << num(r.snr_db) << '\t' << num(r.target_pfa) << '\t' << num(r.threshold) << '\t' << num(r.pfa)
                  << '\t' << num(r.pd) << '\n';
        }
        finish(m, {"detect.tsv"});
        return m;
    }

    std::vector<double> read_samples(const std::filesystem::path &path)
    {
        std::ifstream f(path);
        if (!f)
            throw ConfigError("cannot open sample file '" + path.string() + "'");
        std::vector<double> out;
        std::string line;
        int lineno = 0;
        while (std::getline(f, line))
        {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            std::istringstream in(line);
            double v = 0.0;
            if (!(in >> v))
            {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": not a number");
                continue;
            }
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": samples must be positive");
            out.push_back(v);
        }
        return out;
    }

    std::vector<double> generate_rcs_samples(double mu_db, double sigma_db, int count, std::uint64_t seed)
    {
        if (count < 1)
            throw ConfigError("sample count must be positive");
        RcsModel model;
        model.mu_db = mu_db;
        model.sigma_db = sigma_db;
        model.validate();
        RandomStream rng(seed, 0, RngHop::Target, RngTag::RcsFluctuation);
        std::vector<double> out(static_cast<std::size_t>(count));
        for (auto &v : out)
            v = sample_rcs(model, {}, rng);
        return out;
    }
}
