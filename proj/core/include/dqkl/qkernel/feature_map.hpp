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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dqkl/qsim/gate.hpp"

namespace dqkl::qkernel {

/// Trainable RotY angles, indexed layer-major: t = layer * num_qubits + qubit.
using ParameterVector = Eigen::VectorXd;

/// Layered feature-map circuit. Each layer is
///   H on every qubit -> RotZ(x[embedding[q]]) -> RotY(theta) -> CNOT ring q -> q+1.
struct FeatureMapSpec {
    int num_qubits = 5;
    int layers = 8;
    /// embedding[q] is the feature index encoded on qubit q.
    std::vector<int> embedding;

    /// Features assigned round-robin: qubit q carries feature q % num_features.
    static FeatureMapSpec alternating(int num_qubits, int layers, int num_features = 2);

    int num_parameters() const { return num_qubits * layers; }
    std::size_t dimension() const { return std::size_t{1} << num_qubits; }
    int gates_per_layer() const { return 4 * num_qubits; }

    /// Position of parameter t's RotY inside build_feature_map's output.
    std::size_t rot_y_position(int t) const;

    /// Throws std::invalid_argument on a malformed spec or when an embedding
    /// entry references a feature >= feature_dim.
    void validate(std::size_t feature_dim) const;
};

/// One layer's gates in execution order, ascending qubit index per sublayer.
std::vector<qsim::Gate> build_layer_gates(const FeatureMapSpec& spec,
                                          std::span<const double> theta_layer,
                                          std::span<const double> x);

/// All layers concatenated; theta must have spec.num_parameters() entries.
std::vector<qsim::Gate> build_feature_map(const FeatureMapSpec& spec, const ParameterVector& theta,
                                          std::span<const double> x);

}  // namespace dqkl::qkernel
