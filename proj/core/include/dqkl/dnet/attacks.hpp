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

#include <span>
#include <string>

#include <Eigen/Dense>

#include "dqkl/util/random.hpp"

namespace dqkl::dnet {

enum class NodeRole { kHonest, kGaussianAttacker, kSignFlipAttacker };

std::string to_string(NodeRole role);

enum class VarianceEstimator {
    kElementwise,  ///< population variance per coordinate
    kPooled,       ///< one population variance over every collected entry
};

struct NeighborMoments {
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;
};

/// Element-wise mean and population variance; throws on an empty set.
NeighborMoments neighbor_moments(std::span<const Eigen::VectorXd> neighbors);

/// One draw per coordinate from Normal(mean_k, var_k). Coordinates with zero
/// variance return the mean exactly.
Eigen::VectorXd attack_gaussian(std::span<const Eigen::VectorXd> neighbors, Rng& rng,
                                VarianceEstimator estimator = VarianceEstimator::kElementwise);

/// -(element-wise mean of the neighbors).
Eigen::VectorXd attack_signflip(std::span<const Eigen::VectorXd> neighbors);

}  // namespace dqkl::dnet
