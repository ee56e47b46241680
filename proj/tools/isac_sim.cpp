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

// isac-sim: command-line front end of the simulator.
//
//   isac-sim run          --config FILE [--seed N] [--drops N] [--out DIR] [--workers N]
//   isac-sim concat-study --config FILE [...]
//   isac-sim detect       [--sigma S] [--pfa P ...] [--snr-min A --snr-max B --snr-step C]
//   isac-sim rcs-fit      (--samples FILE | --generate N --mu DB --sigma-db DB)
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure, 4 unsupported feature.

#include "isac/error.hpp"
#include "isac/runner.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    struct Globals
    {
        std::string config;
        std::optional<long long> seed;
        std::optional<long long> drops;
        std::string out = "runs";
        int workers = 0;
    };

    isac::RunConfig load(const Globals &g)
    {
        if (g.config.empty())
            throw isac::ConfigError("--config is required for this subcommand");
        std::ifstream f(g.config);
        if (!f)
            throw isac::ConfigError("cannot open config file '" + g.config + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        std::string text = ss.str();
        auto kv = isac::KeyValueFile::parse(text, g.config);
        if (g.seed)
        {
            kv.set("seed", std::to_string(*g.seed));
            text += "\n# command-line override\nseed = " + std::to_string(*g.seed) + "\n";
        }
        if (g.drops)
        {
            kv.set("drops", std::to_string(*g.drops));
            text += "\n# command-line override\ndrops = " + std::to_string(*g.drops) + "\n";
        }
        isac::RunConfig cfg = isac::validate_config(kv);
        cfg.source_text = text;
        return cfg;
    }

    int workers(const Globals &g) { return g.workers > 0 ? g.workers : omp_get_max_threads(); }
}

int main(int argc, char **argv)
{
    CLI::App app{"Concatenated ISAC channel simulator"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Run configuration (dotted key = value text)");
    app.add_option("--seed", g.seed, "Master seed override");
    app.add_option("--drops", g.drops, "Drop count override");
    app.add_option("--out", g.out, "Root directory for run outputs")->capture_default_str();
    app.add_option("--workers", g.workers, "Worker threads (default: all cores)");
    app.fallthrough();

    auto *run = app.add_subcommand("run", "Full pipeline for the configured concat_case");
    auto *study = app.add_subcommand("concat-study", "All ten concatenation cases per drop");

    auto *detect = app.add_subcommand("detect", "Pfa / Pd tables over SNR");
    double sigma = 1.0, snr_min = -5.0, snr_max = 20.0, snr_step = 1.0;
    std::vector<double> pfas{1e-2, 1e-4, 1e-6};
    detect->add_option("--sigma", sigma, "Noise standard deviation")->capture_default_str();
    detect->add_option("--pfa", pfas, "Target false-alarm probabilities")->capture_default_str();
    detect->add_option("--snr-min", snr_min, "Lowest SNR, dB (SNR = A^2 / (2 sigma^2))")->capture_default_str();
    detect->add_option("--snr-max", snr_max, "Highest SNR, dB")->capture_default_str();
    detect->add_option("--snr-step", snr_step, "SNR step, dB")->capture_default_str();

    auto *fit = app.add_subcommand("rcs-fit", "Log-normal fit of RCS samples (m^2)");
    std::string samples_path;
    int generate = 0;
    double gen_mu = 0.0, gen_sigma = 0.0;
    auto *samples_opt = fit->add_option("--samples", samples_path, "File with one RCS value per line");
    auto *gen_opt = fit->add_option("--generate", generate, "Draw N synthetic samples instead of reading a file");
    fit->add_option("--mu", gen_mu, "Synthetic mean, dBsm");
    fit->add_option("--sigma-db", gen_sigma, "Synthetic standard deviation, dB");
    samples_opt->excludes(gen_opt);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (*run || *study)
        {
            const isac::RunConfig cfg = load(g);
            const auto dir = isac::make_run_directory(g.out, cfg.seed);
            const auto m = *run ? isac::run(cfg, dir, workers(g)) : isac::concat_study(cfg, dir, workers(g));
            std::printf("%s\n", m.directory.string().c_str());
        }
        else if (*detect)
        {
            const auto rows = isac::detection_table(sigma, pfas, snr_min, snr_max, snr_step);
            const auto dir = isac::make_run_directory(g.out, g.seed.value_or(0));
            auto m = isac::write_detection_table(rows, dir);
            isac::write_manifest(m, nullptr, 1);
            std::printf("snr_db\ttarget_pfa\tthreshold\tpfa\tpd\n");
            for (const auto &r : rows)
                std::printf("%.2f\t%.3g\t%.6g\t%.6g\t%.6g\n", r.snr_db, r.target_pfa, r.threshold, r.pfa, r.pd);
            std::printf("%s\n", dir.string().c_str());
        }
        else if (*fit)
        {
            if (samples_path.empty() && generate <= 0)
                throw isac::ConfigError("rcs-fit needs --samples FILE or --generate N");
            const auto dir = isac::make_run_directory(g.out, g.seed.value_or(0));
            std::vector<double> samples;
            isac::RunManifest m;
            m.command = "rcs-fit";
            m.directory = dir;
            if (generate > 0)
            {
                samples = isac::generate_rcs_samples(gen_mu, gen_sigma, generate, std::uint64_t(g.seed.value_or(0)));
                std::ofstream f(dir / "samples.txt");
                f.precision(17);
                f << "# synthetic RCS samples, m^2\n";
                for (double v : samples)
                    f << v << '\n';
                f.close();
                m.sha256["samples.txt"] = isac::sha256_file(dir / "samples.txt");
            }
            else
            {
                samples = isac::read_samples(samples_path);
            }
            const auto r = isac::fit_lognormal_db(samples);
            {
                std::ofstream f(dir / "fit.tsv");
                f.precision(17);
                f << "n\tmu_dbsm\tsigma_db\n" << samples.size() << '\t' << r.mu_db << '\t' << r.sigma_db << '\n';
            }
            m.sha256["fit.tsv"] = isac::sha256_file(dir / "fit.tsv");
            isac::write_manifest(m, nullptr, 1);
            std::printf("n=%zu mu_dbsm=%.6f sigma_db=%.6f\n%s\n", samples.size(), r.mu_db, r.sigma_db,
                        dir.string().c_str());
        }
        return 0;
    }
    catch (const isac::ConfigError &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    catch (const isac::DomainError &e)
    {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 2;
    }
    catch (const isac::NumericError &e)
    {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
    catch (const isac::UnsupportedFeature &e)
    {
        std::fprintf(stderr, "unsupported: %s\n", e.what());
        return 4;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
