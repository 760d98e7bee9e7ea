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


#include <random>

#include <benchmark/benchmark.h>

#include "dqkl/data/data.hpp"
#include "dqkl/learn/alignment.hpp"
#include "dqkl/learn/gram.hpp"
#include "dqkl/qkernel/state_engine.hpp"

using namespace dqkl;

namespace {

qkernel::ParameterVector small_theta(const qkernel::FeatureMapSpec& spec) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    qkernel::ParameterVector theta(spec.num_parameters());
    for (auto& v : theta) v = u(rng);
    return theta;
}

learn::LabeledDataset points(int per_cell) {
    data::CheckerboardSpec cb;
    cb.points_per_cell = per_cell;
    cb.seed = 1;
    return data::gen_checkerboard(cb);
}

}  // namespace

static void BM_KernelEval(benchmark::State& state) {
    auto spec = qkernel::FeatureMapSpec::alternating(5, 8);
    auto theta = small_theta(spec);
    const std::vector<double> a{0.2, 0.4}, b{0.7, 0.1};
    const auto noise = qkernel::NoiseModel::per_gate(0.0005);
    for (auto _ : state) benchmark::DoNotOptimize(qkernel::kernel_eval(spec, theta, a, b, noise));
}
BENCHMARK(BM_KernelEval)->Unit(benchmark::kMicrosecond);

static void BM_EncodeState(benchmark::State& state) {
    auto spec = qkernel::FeatureMapSpec::alternating(5, 8);
    auto theta = small_theta(spec);
    const std::vector<double> x{0.2, 0.4};
    const auto noise = qkernel::NoiseModel::per_gate(0.0005);
    for (auto _ : state) benchmark::DoNotOptimize(qkernel::encode_state(spec, theta, x, noise));
}
BENCHMARK(BM_EncodeState)->Unit(benchmark::kMicrosecond);

static void BM_StateVjp(benchmark::State& state) {
    auto spec = qkernel::FeatureMapSpec::alternating(5, 8);
    auto theta = small_theta(spec);
    const std::vector<double> x{0.2, 0.4}, y{0.6, 0.9};
    const auto noise = qkernel::NoiseModel::per_gate(0.0005);
    auto enc = qkernel::encode_state_with_checkpoints(spec, theta, x, noise);
    auto other = qkernel::encode_state(spec, theta, y, noise);
    for (auto _ : state) benchmark::DoNotOptimize(qkernel::state_vjp(spec, theta, x, noise, enc, other));
}
BENCHMARK(BM_StateVjp)->Unit(benchmark::kMicrosecond);

static void BM_Gram(benchmark::State& state) {
    auto spec = qkernel::FeatureMapSpec::alternating(5, 8);
    auto theta = small_theta(spec);
    auto d = points(static_cast<int>(state.range(0)));
    const auto noise = qkernel::NoiseModel::per_gate(0.0005);
    for (auto _ : state) benchmark::DoNotOptimize(learn::gram(spec, theta, d, noise));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(d.size()));
}
BENCHMARK(BM_Gram)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

// Both gradient routes on an 8-point batch.
static void BM_LossGradient(benchmark::State& state) {
    auto spec = qkernel::FeatureMapSpec::alternating(5, 8);
    auto theta = small_theta(spec);
    auto all = points(1);
    std::vector<std::size_t> pick{0, 1, 2, 3, 4, 5, 6, 7};
    auto d = all.subset(pick);
    const auto noise = qkernel::NoiseModel::per_gate(0.0005);
    const bool tangents = state.range(0) == 1;
    for (auto _ : state) {
        if (tangents) {
            benchmark::DoNotOptimize(learn::loss_grad(d, theta, spec, noise));
        } else {
            benchmark::DoNotOptimize(learn::evaluate_loss(d, theta, spec, noise));
        }
    }
    state.SetLabel(tangents ? "tangents" : "vjp");
}
BENCHMARK(BM_LossGradient)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
