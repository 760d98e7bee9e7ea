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

#include "dqkl/learn/gram.hpp"

#include <stdexcept>

#include "dqkl/util/parallel.hpp"

namespace dqkl::learn {

namespace {

void require_rng(const qkernel::NoiseModel& noise, const Rng* rng) {
    if (noise.shots && rng == nullptr) {
        throw std::invalid_argument("shot sampling requires a random stream");
    }
}

double sampled(double k, const qkernel::NoiseModel& noise, Rng* rng) {
    return noise.shots ? qkernel::shot_sample(k, *noise.shots, *rng) : k;
}

}  // namespace

std::vector<qsim::Matrix> encode_points(const qkernel::FeatureMapSpec& spec,
                                        const qkernel::ParameterVector& theta,
                                        const LabeledDataset& data,
                                        const qkernel::NoiseModel& noise) {
    std::vector<qsim::Matrix> states(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        states[i] = qkernel::encode_state(spec, theta, data[i].x, noise);
    });
    return states;
}

GramMatrix gram_from_states(const std::vector<qsim::Matrix>& states,
                            const qkernel::NoiseModel& noise, Rng* rng) {
    if (states.empty()) throw std::invalid_argument("gram of an empty dataset");
    require_rng(noise, rng);
    const auto n = static_cast<Eigen::Index>(states.size());
    GramMatrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double value = qkernel::kernel_from_states(states[static_cast<std::size_t>(i)],
                                                             states[static_cast<std::size_t>(j)], noise);
            k(i, j) = k(j, i) = sampled(value, noise, rng);
        }
    }
    return k;
}

Eigen::MatrixXd cross_gram_from_states(const std::vector<qsim::Matrix>& rows,
                                       const std::vector<qsim::Matrix>& cols,
                                       const qkernel::NoiseModel& noise, Rng* rng) {
    require_rng(noise, rng);
    Eigen::MatrixXd k(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const double value = qkernel::kernel_from_states(rows[i], cols[j], noise);
            k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sampled(value, noise, rng);
        }
    }
    return k;
}

GramMatrix gram(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
                const LabeledDataset& data, const qkernel::NoiseModel& noise, Rng* rng) {
    if (data.empty()) throw std::invalid_argument("gram of an empty dataset");
    require_rng(noise, rng);
    return gram_from_states(encode_points(spec, theta, data, noise), noise, rng);
}

Eigen::MatrixXd cross_gram(const qkernel::FeatureMapSpec& spec,
                           const qkernel::ParameterVector& theta, const LabeledDataset& rows,
                           const LabeledDataset& cols, const qkernel::NoiseModel& noise,
                           Rng* rng) {
    require_rng(noise, rng);
    return cross_gram_from_states(encode_points(spec, theta, rows, noise),
                                  encode_points(spec, theta, cols, noise), noise, rng);
}

GramMatrix gram_by_circuits(const qkernel::FeatureMapSpec& spec,
                            const qkernel::ParameterVector& theta, const LabeledDataset& data,
                            const qkernel::NoiseModel& noise, Rng* rng) {
    if (data.empty()) throw std::invalid_argument("gram of an empty dataset");
    require_rng(noise, rng);
    const auto exact = noise.without_shots();
    const auto n = static_cast<Eigen::Index>(data.size());
    GramMatrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double value = qkernel::kernel_eval(spec, theta, data[static_cast<std::size_t>(i)].x,
                                                      data[static_cast<std::size_t>(j)].x, exact);
            k(i, j) = k(j, i) = sampled(value, noise, rng);
        }
    }
    return k;
}

GramGradient gram_with_gradient(const qkernel::FeatureMapSpec& spec,
                                const qkernel::ParameterVector& theta,
                                const LabeledDataset& data, const qkernel::NoiseModel& noise) {
    if (data.empty()) throw std::invalid_argument("gram of an empty dataset");
    if (noise.shots) throw std::invalid_argument("kernel gradients require exact expectations");

    std::vector<qkernel::StateWithTangents> encoded(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        encoded[i] = qkernel::encode_state_with_tangents(spec, theta, data[i].x, noise);
    });

    // The analytic global model scales every kernel entry by (1 - p).
    const double scale = noise.mode == qkernel::NoiseMode::kGlobalAnalytic ? 1.0 - noise.rate : 1.0;
    const auto n = static_cast<Eigen::Index>(data.size());
    const int num_params = spec.num_parameters();

    GramGradient out;
    out.value.resize(n, n);
    out.derivative.assign(static_cast<std::size_t>(num_params), Eigen::MatrixXd(n, n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& a = encoded[static_cast<std::size_t>(i)];
        for (Eigen::Index j = i; j < n; ++j) {
            const auto& b = encoded[static_cast<std::size_t>(j)];
            out.value(i, j) = out.value(j, i) = qkernel::kernel_from_states(a.state, b.state, noise);
            for (int t = 0; t < num_params; ++t) {
                const auto ut = static_cast<std::size_t>(t);
                const double d = scale * (qsim::trace_product(a.tangents[ut], b.state) +
                                          qsim::trace_product(a.state, b.tangents[ut]));
                out.derivative[ut](i, j) = out.derivative[ut](j, i) = d;
            }
        }
    }
    return out;
}

}  // namespace dqkl::learn
