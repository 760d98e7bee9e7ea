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

#include "dqkl/qkernel/state_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "dqkl/qsim/density_matrix.hpp"

namespace dqkl::qkernel {

namespace {

void depolarize_touched(qsim::Matrix& m, const qsim::Gate& g, double p) {
    qsim::depolarize(m, g.qubit, p);
    if (g.kind == qsim::GateKind::kCnot) qsim::depolarize(m, g.target, p);
}

}  // namespace

qsim::Matrix encode_state(const FeatureMapSpec& spec, const ParameterVector& theta,
                          std::span<const double> x, const NoiseModel& noise) {
    noise.validate();
    const auto gates = build_feature_map(spec, theta, x);
    qsim::Matrix rho = qsim::DensityMatrix::zero_state(spec.num_qubits).matrix();
    run_forward(rho, gates, noise.gate_noise());
    return rho;
}

StateWithTangents encode_state_with_tangents(const FeatureMapSpec& spec,
                                             const ParameterVector& theta,
                                             std::span<const double> x, const NoiseModel& noise) {
    noise.validate();
    const auto gates = build_feature_map(spec, theta, x);
    const double p = noise.gate_noise();

    StateWithTangents out;
    out.state = qsim::DensityMatrix::zero_state(spec.num_qubits).matrix();
    out.tangents.reserve(static_cast<std::size_t>(spec.num_parameters()));

    // Tangents are born at their RotY (derivative of the conjugation at the
    // rotated state) and from then on follow the same linear maps as the state.
    // RotY gates appear in layer-major order, matching t = layer * n + qubit.
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const auto& g = gates[k];
        qsim::apply_in_place(out.state, g);
        for (auto& tangent : out.tangents) qsim::apply_in_place(tangent, g);
        if (g.kind == qsim::GateKind::kRotY) {
            out.tangents.push_back(qsim::rot_y_generator_commutator(out.state, g.qubit));
        }
        if (p > 0.0) {
            depolarize_touched(out.state, g, p);
            for (auto& tangent : out.tangents) depolarize_touched(tangent, g, p);
        }
    }
    return out;
}

StateWithCheckpoints encode_state_with_checkpoints(const FeatureMapSpec& spec,
                                                   const ParameterVector& theta,
                                                   std::span<const double> x,
                                                   const NoiseModel& noise) {
    noise.validate();
    const auto gates = build_feature_map(spec, theta, x);
    const double p = noise.gate_noise();

    StateWithCheckpoints out;
    out.state = qsim::DensityMatrix::zero_state(spec.num_qubits).matrix();
    out.checkpoints.reserve(static_cast<std::size_t>(spec.num_parameters()));
    for (const auto& g : gates) {
        qsim::apply_in_place(out.state, g);
        if (p > 0.0) depolarize_touched(out.state, g, p);
        if (g.kind == qsim::GateKind::kRotY) out.checkpoints.push_back(out.state);
    }
    return out;
}

ParameterVector state_vjp(const FeatureMapSpec& spec, const ParameterVector& theta,
                          std::span<const double> x, const NoiseModel& noise,
                          const StateWithCheckpoints& encoded, const qsim::Matrix& m) {
    noise.validate();
    const auto gates = build_feature_map(spec, theta, x);
    const double p = noise.gate_noise();
    if (encoded.checkpoints.size() != static_cast<std::size_t>(spec.num_parameters())) {
        throw std::invalid_argument("checkpoints do not match the feature map");
    }
    if (m.rows() != encoded.state.rows() || m.cols() != encoded.state.cols()) {
        throw std::invalid_argument("cotangent shape differs from the state");
    }

    // Depolarizing commutes with the RotY generator commutator on the same
    // qubit, so d rho / d theta_t = Phi_after(C_t(checkpoint_t)) and
    // Tr[d rho m] = Tr[C_t(checkpoint_t) Phi_after^dagger(m)].
    ParameterVector grad(spec.num_parameters());
    qsim::Matrix back = m;
    int t = spec.num_parameters();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        if (it->kind == qsim::GateKind::kRotY) {
            --t;
            const auto& checkpoint = encoded.checkpoints[static_cast<std::size_t>(t)];
            grad[t] = qsim::trace_product(qsim::rot_y_generator_commutator(checkpoint, it->qubit), back);
        }
        if (p > 0.0) {
            if (it->kind == qsim::GateKind::kCnot) qsim::depolarize(back, it->target, p);
            qsim::depolarize(back, it->qubit, p);
        }
        qsim::apply_in_place(back, it->adjoint());
    }
    return grad;
}

double kernel_from_states(const qsim::Matrix& a, const qsim::Matrix& b, const NoiseModel& noise) {
    const double overlap = std::clamp(qsim::trace_product(a, b), 0.0, 1.0);
    if (noise.mode == NoiseMode::kGlobalAnalytic) {
        return analytic_noisy_kernel(overlap, noise.rate, static_cast<std::size_t>(a.rows()));
    }
    return overlap;
}

}  // namespace dqkl::qkernel
