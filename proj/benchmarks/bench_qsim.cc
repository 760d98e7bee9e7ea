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

#include "dqkl/qsim/density_matrix.hpp"

using namespace dqkl::qsim;

static void BM_ConjugateRotY(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Matrix m = DensityMatrix::maximally_mixed(n).matrix();
    for (auto _ : state) {
        for (int q = 0; q < n; ++q) conjugate_rot_y(m, q, 0.3);
        benchmark::DoNotOptimize(m.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ConjugateRotY)->DenseRange(2, 8, 2);

static void BM_ConjugateCnot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Matrix m = DensityMatrix::maximally_mixed(n).matrix();
    for (auto _ : state) {
        for (int q = 0; q < n; ++q) conjugate_cnot(m, q, (q + 1) % n);
        benchmark::DoNotOptimize(m.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ConjugateCnot)->DenseRange(2, 8, 2);

static void BM_Depolarize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Matrix m = DensityMatrix::maximally_mixed(n).matrix();
    for (auto _ : state) {
        for (int q = 0; q < n; ++q) depolarize(m, q, 0.001);
        benchmark::DoNotOptimize(m.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Depolarize)->DenseRange(2, 8, 2);
