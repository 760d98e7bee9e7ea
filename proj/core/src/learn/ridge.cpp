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


#include "dqkl/learn/ridge.hpp"

#include <cmath>
#include <sstream>

namespace dqkl::learn {

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kResidualTolerance = 1e-8;

}  // namespace

RidgeModel fit_ridge(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels, double lambda) {
    if (k.rows() != k.cols() || k.rows() != labels.size()) {
        throw std::invalid_argument("kernel matrix and labels differ in size");
    }
    if (k.rows() == 0) throw std::invalid_argument("cannot fit on an empty training set");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("ridge regularizer must be positive and finite");
    }
    if ((k - k.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
        throw std::invalid_argument("kernel matrix is not symmetric");
    }

    Eigen::MatrixXd system = k;
    system.diagonal().array() += lambda;
    // LDLT tolerates the indefinite matrices that shot noise can produce.
    const Eigen::LDLT<Eigen::MatrixXd> solver(system);
    if (solver.info() != Eigen::Success) throw SolverError("ridge factorization failed");

    RidgeModel model;
    model.lambda = lambda;
    model.alpha = solver.solve(labels);
    const double residual = (system * model.alpha - labels).cwiseAbs().maxCoeff();
    if (!std::isfinite(residual) || residual > kResidualTolerance) {
        std::ostringstream msg;
        msg << "ridge solve residual " << residual << " exceeds " << kResidualTolerance;
        throw SolverError(msg.str());
    }
    return model;
}

RidgeModel fit_ridge(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
                     const LabeledDataset& training, const qkernel::NoiseModel& noise,
                     double lambda, Rng* rng) {
    auto model = fit_ridge(gram(spec, theta, training, noise, rng), training.labels(), lambda);
    model.training = training;
    return model;
}

int predict(const RidgeModel& model, const Eigen::VectorXd& k_vec) {
    if (k_vec.size() != model.alpha.size()) {
        throw std::invalid_argument("kernel vector length differs from the training set size");
    }
    return k_vec.dot(model.alpha) >= 0.0 ? 1 : -1;
}

double accuracy(const RidgeModel& model, const Eigen::MatrixXd& k_eval,
                const Eigen::VectorXd& labels) {
    if (k_eval.rows() != labels.size()) throw std::invalid_argument("one label per row required");
    if (labels.size() == 0) throw std::invalid_argument("accuracy of an empty evaluation set");
    Eigen::Index correct = 0;
    for (Eigen::Index i = 0; i < k_eval.rows(); ++i) {
        if (predict(model, k_eval.row(i).transpose()) == static_cast<int>(labels[i])) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double score(const RidgeModel& model, const LabeledDataset& eval,
             const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
             const qkernel::NoiseModel& noise, Rng* rng) {
    if (eval.empty()) throw std::invalid_argument("score of an empty evaluation set");
    if (model.training.size() != static_cast<std::size_t>(model.alpha.size())) {
        throw std::invalid_argument("model does not carry its training points");
    }
    return accuracy(model, cross_gram(spec, theta, eval, model.training, noise, rng), eval.labels());
}

}  // namespace dqkl::learn
