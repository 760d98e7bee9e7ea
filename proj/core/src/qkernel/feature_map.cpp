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

#include "dqkl/qkernel/feature_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dqkl::qkernel {

FeatureMapSpec FeatureMapSpec::alternating(int num_qubits, int layers, int num_features) {
    if (num_features < 1) throw std::invalid_argument("feature count must be positive");
    FeatureMapSpec spec;
    spec.num_qubits = num_qubits;
    spec.layers = layers;
    spec.embedding.resize(static_cast<std::size_t>(std::max(num_qubits, 0)));
    for (int q = 0; q < num_qubits; ++q) spec.embedding[q] = q % num_features;
    return spec;
}

std::size_t FeatureMapSpec::rot_y_position(int t) const {
    const int layer = t / num_qubits;
    const int qubit = t % num_qubits;
    return static_cast<std::size_t>(layer * gates_per_layer() + 2 * num_qubits + qubit);
}

void FeatureMapSpec::validate(std::size_t feature_dim) const {
    qsim::dimension_for(num_qubits);
    if (num_qubits < 2) throw std::invalid_argument("feature map needs at least 2 qubits");
    if (layers < 1) throw std::invalid_argument("feature map needs at least one layer");
    if (embedding.size() != static_cast<std::size_t>(num_qubits)) {
        throw std::invalid_argument("embedding must assign exactly one feature per qubit");
    }
    for (int q = 0; q < num_qubits; ++q) {
        if (embedding[q] < 0 || static_cast<std::size_t>(embedding[q]) >= feature_dim) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " embeds feature " +
                                        std::to_string(embedding[q]) + " but data has " +
                                        std::to_string(feature_dim) + " features");
        }
    }
}

std::vector<qsim::Gate> build_layer_gates(const FeatureMapSpec& spec,
                                          std::span<const double> theta_layer,
                                          std::span<const double> x) {
    spec.validate(x.size());
    const int n = spec.num_qubits;
    if (theta_layer.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("layer parameter count must equal the qubit count");
    }
    std::vector<qsim::Gate> gates;
    gates.reserve(static_cast<std::size_t>(spec.gates_per_layer()));
    for (int q = 0; q < n; ++q) gates.push_back(qsim::Gate::hadamard(q));
    for (int q = 0; q < n; ++q) gates.push_back(qsim::Gate::rot_z(q, x[spec.embedding[q]]));
    for (int q = 0; q < n; ++q) gates.push_back(qsim::Gate::rot_y(q, theta_layer[q]));
    for (int q = 0; q < n; ++q) gates.push_back(qsim::Gate::cnot(q, (q + 1) % n));
    return gates;
}

std::vector<qsim::Gate> build_feature_map(const FeatureMapSpec& spec, const ParameterVector& theta,
                                          std::span<const double> x) {
    if (theta.size() != spec.num_parameters()) {
        throw std::invalid_argument("parameter vector has " + std::to_string(theta.size()) +
                                    " entries, expected " +
                                    std::to_string(spec.num_parameters()));
    }
    for (Eigen::Index t = 0; t < theta.size(); ++t) {
        if (!std::isfinite(theta[t])) throw std::invalid_argument("non-finite parameter");
    }
    std::vector<qsim::Gate> gates;
    gates.reserve(static_cast<std::size_t>(spec.layers * spec.gates_per_layer()));
    for (int l = 0; l < spec.layers; ++l) {
        const auto layer = build_layer_gates(
            spec, std::span<const double>(theta.data() + l * spec.num_qubits, spec.num_qubits), x);
        gates.insert(gates.end(), layer.begin(), layer.end());
    }
    return gates;
}

}  // namespace dqkl::qkernel
