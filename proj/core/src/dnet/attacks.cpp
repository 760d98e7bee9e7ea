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


#include "dqkl/dnet/attacks.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "dqkl/dnet/aggregation.hpp"

namespace dqkl::dnet {

std::string to_string(NodeRole role) {
    switch (role) {
        case NodeRole::kHonest:
            return "honest";
        case NodeRole::kGaussianAttacker:
            return "gaussian";
        case NodeRole::kSignFlipAttacker:
            return "signflip";
    }
    return "unknown";
}

NeighborMoments neighbor_moments(std::span<const Eigen::VectorXd> neighbors) {
    if (neighbors.empty()) throw std::invalid_argument("attacker has no neighbor messages");
    NeighborMoments m;
    m.mean = mean_vector(neighbors);
    m.variance = Eigen::VectorXd::Zero(m.mean.size());
    for (const auto& v : neighbors) m.variance += (v - m.mean).cwiseAbs2();
    m.variance /= static_cast<double>(neighbors.size());
    return m;
}

Eigen::VectorXd attack_gaussian(std::span<const Eigen::VectorXd> neighbors, Rng& rng,
                                VarianceEstimator estimator) {
    auto m = neighbor_moments(neighbors);
    if (estimator == VarianceEstimator::kPooled) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (const auto& v : neighbors) {
            sum += v.sum();
            sum_sq += v.squaredNorm();
        }
        const double count = static_cast<double>(neighbors.size()) * static_cast<double>(m.mean.size());
        const double mean = sum / count;
        m.variance.setConstant(std::max(0.0, sum_sq / count - mean * mean));
    }
    Eigen::VectorXd out(m.mean.size());
    std::normal_distribution<double> standard(0.0, 1.0);
    for (Eigen::Index k = 0; k < out.size(); ++k) {
        // A draw is consumed for every coordinate so the stream position does
        // not depend on which variances happen to vanish.
        const double z = standard(rng);
        out[k] = m.variance[k] > 0.0 ? m.mean[k] + std::sqrt(m.variance[k]) * z : m.mean[k];
    }
    return out;
}

Eigen::VectorXd attack_signflip(std::span<const Eigen::VectorXd> neighbors) {
    if (neighbors.empty()) throw std::invalid_argument("attacker has no neighbor messages");
    return -mean_vector(neighbors);
}

}  // namespace dqkl::dnet
