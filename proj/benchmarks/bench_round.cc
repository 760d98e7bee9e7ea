// Copyright 2026 The dqkl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "dqkl/runner/config.hpp"
#include "dqkl/runner/experiment.hpp"

using namespace dqkl;

// Wall time per training round on the default 4-node ring.
static void BM_DecentralizedRound(benchmark::State& state) {
    runner::ExperimentConfig c;
    c.seed = 1;
    c.budget = state.range(0);
    c.eval_every = 1000000;
    runner::RunOptions opts;
    opts.final_scores = false;
    const auto data = runner::prepare_data(c);
    for (auto _ : state) benchmark::DoNotOptimize(runner::run_decentralized(c, data, opts));
    state.SetItemsProcessed(state.iterations() * c.budget);
}
BENCHMARK(BM_DecentralizedRound)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_CentralizedRound(benchmark::State& state) {
    runner::ExperimentConfig c;
    c.seed = 1;
    c.budget = state.range(0);
    c.eval_every = 1000000;
    runner::RunOptions opts;
    opts.final_scores = false;
    const auto data = runner::prepare_data(c);
    for (auto _ : state) benchmark::DoNotOptimize(runner::run_centralized(c, data, opts));
    state.SetItemsProcessed(state.iterations() * c.budget);
}
BENCHMARK(BM_CentralizedRound)->Arg(5)->Unit(benchmark::kMillisecond);
