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

namespace dqkl::learn {

inline constexpr double kDefaultRidge = 0.1;

/// Raised when (K + lambda I) alpha = y cannot be solved to residual 1e-8.
class SolverError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct RidgeModel {
    /// Training points; empty when the model was fitted from a bare matrix.
    LabeledDataset training;
    Eigen::VectorXd alpha;
    double lambda = kDefaultRidge;
};

/// Dual ridge solve (K + lambda I) alpha = y.
RidgeModel fit_ridge(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels, double lambda);

/// Fits on `training` with its Gram matrix under `noise`.
RidgeModel fit_ridge(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
                     const LabeledDataset& training, const qkernel::NoiseModel& noise,
                     double lambda, Rng* rng = nullptr);

/// sign(k_vec . alpha) with an exact zero mapped to +1.
int predict(const RidgeModel& model, const Eigen::VectorXd& k_vec);

/// Fraction of rows of `k_eval` (eval x training kernel values) predicted correctly.
double accuracy(const RidgeModel& model, const Eigen::MatrixXd& k_eval,
                const Eigen::VectorXd& labels);

/// Accuracy on `eval`, with kernel vectors against model.training under `noise`.
double score(const RidgeModel& model, const LabeledDataset& eval,
             const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
             const qkernel::NoiseModel& noise, Rng* rng = nullptr);

struct ScoreReport {
    double score1 = 0.0;  ///< local train -> local test
    double score2 = 0.0;  ///< local train -> global test
    double score3 = 0.0;  ///< global train -> global test
    double alignment = 0.0;
    long iterations = 0;
};

}  // namespace dqkl::learn
