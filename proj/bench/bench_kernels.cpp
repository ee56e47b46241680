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

// Serial reference vs OpenMP kernels: coefficient synthesis and drop-level parallelism.

#include "isac/coefficients.hpp"
#include "isac/runner.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

namespace
{
    using namespace isac;

    struct SynthesisFixture
    {
        std::vector<PathDescriptor> paths;
        NodeState tx, rx;
        SnapshotGrid grid{0.0, 1e-3, 8};
        double wavelength = 0.05;

        SynthesisFixture()
        {
            const RunConfig cfg = reference_config(1, 2024);
            const DropContext ctx(cfg);
            const RngContext c1{2024, 0, RngHop::TxTarget}, c2{2024, 0, RngHop::TargetRx};
            const auto s1 = generate_sublink(make_hop(ctx.tx, ctx.target, ctx.scenario, LinkCondition::NLOS, c1),
                                             ctx.scenario, c1);
            const auto s2 = generate_sublink(make_hop(ctx.target, ctx.rx, ctx.scenario, LinkCondition::NLOS, c2),
                                             ctx.scenario, c2);
            RandomStream rng(2024, 0, RngHop::Target, RngTag::ConcatCoupling);
            const auto set = concatenate(s1, s2, ConcatCase::Case1, rng);
            tx = ctx.tx;
            rx = ctx.rx;
            tx.array = uniform_linear_array(4, wavelength / 2, ArrayAxis::Y);
            rx.array = uniform_linear_array(4, wavelength / 2, ArrayAxis::Y);
            paths = target_path_descriptors(set, tx, rx, ctx.target, cfg.rcs, cfg.polarization, wavelength,
                                            {2024, 0, RngHop::Target});
        }
    };

    const SynthesisFixture &fixture()
    {
        static const SynthesisFixture f;
        return f;
    }

    void synthesize(benchmark::State &state, Execution exec)
    {
        const auto &f = fixture();
        for (auto _ : state)
            benchmark::DoNotOptimize(synthesize_cir(f.paths, f.tx.array, f.rx.array, f.grid, f.wavelength, exec));
        state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(f.paths.size()) * 16 * f.grid.count);
        state.counters["threads"] = exec == Execution::Parallel ? omp_get_max_threads() : 1;
    }

    void drops(benchmark::State &state, int workers, Execution exec)
    {
        const DropContext ctx(reference_config(16, 2024));
        DropOptions o;
        o.cases = {ConcatCase::Case1, ConcatCase::Case2R};
        o.synthesize = true;
        o.exec = exec;
        for (auto _ : state)
            benchmark::DoNotOptimize(run_drops(ctx, 0, 16, o, workers, exec));
        state.SetItemsProcessed(std::int64_t(state.iterations()) * 16);
        state.counters["workers"] = workers;
    }
}

BENCHMARK_CAPTURE(synthesize, serial_reference, isac::Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(synthesize, openmp, isac::Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(drops, serial_reference, 1, isac::Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(drops, openmp, omp_get_max_threads(), isac::Execution::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
