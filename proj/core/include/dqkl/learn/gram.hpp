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

#include <vector>

#include <Eigen/Dense>

#include "dqkl/learn/dataset.hpp"
#include "dqkl/qkernel/kernel.hpp"
#include "dqkl/qkernel/state_engine.hpp"
#include "dqkl/util/random.hpp"

namespace dqkl::learn {

using GramMatrix = Eigen::MatrixXd;

/// Encoded states rho(x_i) for every point, in dataset order.
std::vector<qsim::Matrix> encode_points(const qkernel::FeatureMapSpec& spec,
                                        const qkernel::ParameterVector& theta,
                                        const LabeledDataset& data,
                                        const qkernel::NoiseModel& noise);

/// Symmetric Gram matrix from encoded states. With noise.shots set, each
/// unordered pair (diagonal included) is sampled once from `rng` in row-major
/// upper-triangle order and mirrored.
GramMatrix gram_from_states(const std::vector<qsim::Matrix>& states,
                            const qkernel::NoiseModel& noise, Rng* rng = nullptr);

/// Rectangular kernel matrix K(rows_i, cols_j); shots are sampled row-major.
Eigen::MatrixXd cross_gram_from_states(const std::vector<qsim::Matrix>& rows,
                                       const std::vector<qsim::Matrix>& cols,
                                       const qkernel::NoiseModel& noise, Rng* rng = nullptr);

/// Gram matrix of `data`; entry (i, j) equals kernel_eval(x_i, x_j).
GramMatrix gram(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
                const LabeledDataset& data, const qkernel::NoiseModel& noise,
                Rng* rng = nullptr);

Eigen::MatrixXd cross_gram(const qkernel::FeatureMapSpec& spec,
                           const qkernel::ParameterVector& theta, const LabeledDataset& rows,
                           const LabeledDataset& cols, const qkernel::NoiseModel& noise,
                           Rng* rng = nullptr);

/// Reference route: one compute-uncompute circuit per unordered pair.
GramMatrix gram_by_circuits(const qkernel::FeatureMapSpec& spec,
                            const qkernel::ParameterVector& theta, const LabeledDataset& data,
                            const qkernel::NoiseModel& noise, Rng* rng = nullptr);

struct GramGradient {
    GramMatrix value;
    /// derivative[t](i, j) = dK_ij / d theta_t.
    std::vector<Eigen::MatrixXd> derivative;
};

/// Gram matrix and all entrywise parameter derivatives. Requires noise without shots.
GramGradient gram_with_gradient(const qkernel::FeatureMapSpec& spec,
                                const qkernel::ParameterVector& theta,
                                const LabeledDataset& data, const qkernel::NoiseModel& noise);

}  // namespace dqkl::learn
