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

#pragma once

#include <span>
#include <vector>

#include "dqkl/qkernel/kernel.hpp"

// Per-point state route for kernel matrices.
//
// Because the adjoint half of the interference circuit is the exact dual of
// the noisy forward half, K_e(x, x') = Tr[rho(x) rho(x')] where rho(x) is the
// noisy encoded state. A Gram matrix therefore needs one circuit simulation
// per point instead of one per pair, and parameter derivatives come from
// per-point tangents d rho(x) / d theta_t.

namespace dqkl::qkernel {

/// rho(x): the noisy feature map applied to |0...0><0...0|.
qsim::Matrix encode_state(const FeatureMapSpec& spec, const ParameterVector& theta,
                          std::span<const double> x, const NoiseModel& noise);

struct StateWithTangents {
    qsim::Matrix state;
    /// tangents[t] = d rho(x) / d theta_t.
    std::vector<qsim::Matrix> tangents;
};

/// rho(x) together with all T tangents, propagated forward in one sweep.
StateWithTangents encode_state_with_tangents(const FeatureMapSpec& spec,
                                             const ParameterVector& theta,
                                             std::span<const double> x, const NoiseModel& noise);

struct StateWithCheckpoints {
    qsim::Matrix state;
    /// checkpoints[t]: the state right after parameter t's RotY step (gate and noise).
    std::vector<qsim::Matrix> checkpoints;
};

/// rho(x) plus the intermediate states needed by state_vjp.
StateWithCheckpoints encode_state_with_checkpoints(const FeatureMapSpec& spec,
                                                   const ParameterVector& theta,
                                                   std::span<const double> x,
                                                   const NoiseModel& noise);

/// Vector-Jacobian product g_t = Re Tr[(d rho(x) / d theta_t) m] for a
/// Hermitian cotangent m, from one Heisenberg-picture sweep of m back through
/// the noisy circuit. Equals trace_product(tangents[t], m) of the forward route.
ParameterVector state_vjp(const FeatureMapSpec& spec, const ParameterVector& theta,
                          std::span<const double> x, const NoiseModel& noise,
                          const StateWithCheckpoints& encoded, const qsim::Matrix& m);

/// Kernel value from two encoded states under `noise` (shots ignored).
double kernel_from_states(const qsim::Matrix& a, const qsim::Matrix& b, const NoiseModel& noise);

}  // namespace dqkl::qkernel
