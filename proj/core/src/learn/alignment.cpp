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


#include "dqkl/learn/alignment.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dqkl/util/parallel.hpp"

namespace dqkl::learn {

namespace {

constexpr double kDegenerateNorm = 1e-24;

void check_shapes(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels) {
    if (k.rows() != k.cols()) throw std::invalid_argument("kernel matrix must be square");
    if (k.rows() != labels.size()) {
        throw std::invalid_argument("kernel matrix has " + std::to_string(k.rows()) +
                                    " rows but there are " + std::to_string(labels.size()) +
                                    " labels");
    }
    if (labels.size() == 0) throw std::invalid_argument("alignment of an empty dataset");
}

double squared_norm_checked(const Eigen::MatrixXd& k) {
    const double s = k.squaredNorm();
    if (s < kDegenerateNorm) throw DegenerateKernelError("kernel matrix is numerically zero");
    return s;
}

// y^T A y / n and the quotient-rule form shared by both gradient routes:
//   dA = y^T dK y / (n |K|) - (y^T K y) <K, dK> / (n |K|^3).
double quotient_rule(const Eigen::MatrixXd& shifted_k, double y_k_y, const Eigen::MatrixXd& dk,
                     const Eigen::VectorXd& y) {
    const double n = static_cast<double>(y.size());
    const double s = squared_norm_checked(shifted_k);
    const double norm = std::sqrt(s);
    const double y_dk_y = y.dot(dk * y);
    const double k_dk = shifted_k.cwiseProduct(dk).sum();
    return y_dk_y / (n * norm) - y_k_y * k_dk / (n * s * norm);
}

}  // namespace

GramMatrix ideal_gram(const Eigen::VectorXd& labels) {
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
        if (labels[i] != 1.0 && labels[i] != -1.0) {
            throw std::invalid_argument("labels must be -1 or +1");
        }
    }
    return labels * labels.transpose();
}

double alignment(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels) {
    check_shapes(k, labels);
    const double n = static_cast<double>(labels.size());
    return labels.dot(k * labels) / (n * std::sqrt(squared_norm_checked(k)));
}

double alignment_derivative(const Eigen::MatrixXd& k, const Eigen::MatrixXd& dk,
                            const Eigen::VectorXd& labels) {
    check_shapes(k, labels);
    if (dk.rows() != k.rows() || dk.cols() != k.cols()) {
        throw std::invalid_argument("derivative matrix shape differs from kernel matrix");
    }
    return quotient_rule(k, labels.dot(k * labels), dk, labels);
}

Eigen::MatrixXd alignment_weights(const Eigen::MatrixXd& k, const Eigen::VectorXd& labels) {
    check_shapes(k, labels);
    const double n = static_cast<double>(labels.size());
    const double s = squared_norm_checked(k);
    const double norm = std::sqrt(s);
    const double y_k_y = labels.dot(k * labels);
    return labels * labels.transpose() / (n * norm) - k * (y_k_y / (n * s * norm));
}

double loss(const LabeledDataset& data, const qkernel::ParameterVector& theta,
            const qkernel::FeatureMapSpec& spec, const qkernel::NoiseModel& noise, Rng* rng) {
    return -alignment(gram(spec, theta, data, noise, rng), data.labels());
}

LossEvaluation evaluate_loss(const LabeledDataset& data, const qkernel::ParameterVector& theta,
                             const qkernel::FeatureMapSpec& spec,
                             const qkernel::NoiseModel& noise) {
    if (data.empty()) throw std::invalid_argument("loss of an empty dataset");
    if (noise.shots) throw std::invalid_argument("kernel gradients require exact expectations");
    const std::size_t n = data.size();
    std::vector<qkernel::StateWithCheckpoints> encoded(n);
    parallel_for(n, [&](std::size_t i) {
        encoded[i] = qkernel::encode_state_with_checkpoints(spec, theta, data[i].x, noise);
    });
    std::vector<qsim::Matrix> states(n);
    for (std::size_t i = 0; i < n; ++i) states[i] = encoded[i].state;

    const auto y = data.labels();
    const GramMatrix k = gram_from_states(states, noise);
    LossEvaluation out;
    out.alignment = alignment(k, y);
    out.loss = -out.alignment;

    // With W symmetric, sum_ij W_ij (Tr[drho_i rho_j] + Tr[rho_i drho_j])
    // = 2 sum_i Tr[drho_i M_i] where M_i = sum_j W_ij rho_j.
    const double scale = noise.mode == qkernel::NoiseMode::kGlobalAnalytic ? 1.0 - noise.rate : 1.0;
    const Eigen::MatrixXd w = alignment_weights(k, y);
    std::vector<qkernel::ParameterVector> parts(n);
    parallel_for(n, [&](std::size_t i) {
        qsim::Matrix m = qsim::Matrix::Zero(states[i].rows(), states[i].cols());
        for (std::size_t j = 0; j < n; ++j) {
            m += w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * states[j];
        }
        parts[i] = qkernel::state_vjp(spec, theta, data[i].x, noise, encoded[i], m);
    });
    out.grad = qkernel::ParameterVector::Zero(spec.num_parameters());
    for (const auto& part : parts) out.grad -= 2.0 * scale * part;
    return out;
}

qkernel::ParameterVector loss_grad(const LabeledDataset& data,
                                   const qkernel::ParameterVector& theta,
                                   const qkernel::FeatureMapSpec& spec,
                                   const qkernel::NoiseModel& noise) {
    const auto g = gram_with_gradient(spec, theta, data, noise);
    const auto y = data.labels();
    qkernel::ParameterVector grad(static_cast<Eigen::Index>(g.derivative.size()));
    for (std::size_t t = 0; t < g.derivative.size(); ++t) {
        grad[static_cast<Eigen::Index>(t)] = -alignment_derivative(g.value, g.derivative[t], y);
    }
    return grad;
}

double noisy_alignment_grad_analytic(const Eigen::MatrixXd& k, const Eigen::MatrixXd& dk, double p,
                                     std::size_t dim, const Eigen::VectorXd& labels) {
    check_shapes(k, labels);
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("analytic noisy gradient needs 0 <= p < 1, got " +
                                    std::to_string(p));
    }
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    if (labels.sum() != 0.0) throw std::invalid_argument("labels must be balanced");
    const double shift = p / ((1.0 - p) * static_cast<double>(dim));
    const Eigen::MatrixXd shifted = k.array() + shift;
    // Balanced labels make y^T 1 1^T y vanish, so the shift drops out of y^T K y.
    return quotient_rule(shifted, labels.dot(k * labels), dk, labels);
}

}  // namespace dqkl::learn
