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

#include <stdexcept>

#include <Eigen/Dense>

#include "dqkl/learn/dataset.hpp"
#include "dqkl/learn/gram.hpp"
#include "dqkl/qkernel/kernel.hpp"

namespace dqkl::learn {

/// Raised when sum K_ij^2 is below 1e-24 and alignment is undefined.
class DegenerateKernelError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// K*_ij = y_i y_j.
GramMatrix ideal_gram(const Eigen::VectorXd& labels);

/// sum_ij y_i y_j K_ij / (n sqrt(sum_ij K_ij^2)), diagonal included.
double alignment(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels);

/// dA/d theta from K and dK/d theta by the quotient rule.
double alignment_derivative(const Eigen::MatrixXd& k, const Eigen::MatrixXd& dk,
                            const Eigen::VectorXd& labels);

/// dA/dK_ij for every entry; alignment_derivative(K, dK) = sum_ij weights_ij dK_ij.
Eigen::MatrixXd alignment_weights(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels);

/// -alignment(gram(data), y).
double loss(const LabeledDataset& data, const qkernel::ParameterVector& theta,
            const qkernel::FeatureMapSpec& spec, const qkernel::NoiseModel& noise,
            Rng* rng = nullptr);

/// Gradient of loss with respect to every theta_t, assembled entrywise from
/// dK_ij / d theta_t. Requires noise without shots.
qkernel::ParameterVector loss_grad(const LabeledDataset& data,
                                   const qkernel::ParameterVector& theta,
                                   const qkernel::FeatureMapSpec& spec,
                                   const qkernel::NoiseModel& noise);

struct LossEvaluation {
    double loss = 0.0;
    double alignment = 0.0;
    qkernel::ParameterVector grad;
};

/// loss, alignment and the loss gradient. The gradient contracts
/// alignment_weights with per-point state derivatives through state_vjp,
/// which avoids materializing the T derivative matrices of loss_grad.
LossEvaluation evaluate_loss(const LabeledDataset& data, const qkernel::ParameterVector& theta,
                             const qkernel::FeatureMapSpec& spec,
                             const qkernel::NoiseModel& noise);

/// dA/d theta_t of the globally depolarized kernel (1-p) K + p/D, written in
/// terms of the noiseless K, dK and the shift p / ((1-p) D). Labels must be
/// balanced; throws std::invalid_argument for p outside [0, 1).
double noisy_alignment_grad_analytic(const Eigen::MatrixXd& k, const Eigen::MatrixXd& dk, double p,
                                     std::size_t dim, const Eigen::VectorXd& labels);

}  // namespace dqkl::learn
