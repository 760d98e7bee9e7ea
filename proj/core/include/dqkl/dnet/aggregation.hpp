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

#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dqkl::dnet {

/// Received half-step parameters keyed by sender id (the receiver included).
using Messages = std::map<int, Eigen::VectorXd>;

class MissingMessageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class ClipReference {
    kSelfCentered,  ///< clip the displacement theta_j - theta_i, then add theta_i back
    kLiteral,       ///< clip the received vector itself
};

struct AggregationRule {
    enum class Kind { kWeightedAverage, kRobustClip };

    Kind kind = Kind::kWeightedAverage;
    double tau = 0.0;
    ClipReference reference = ClipReference::kSelfCentered;

    static AggregationRule plain() { return {}; }
    static AggregationRule robust(double tau, ClipReference ref = ClipReference::kSelfCentered) {
        return {Kind::kRobustClip, tau, ref};
    }

    void validate() const;
    std::string str() const;
};

/// sum_j w_ij theta_j over every j with w_ij > 0.
Eigen::VectorXd aggregate_plain(const Messages& messages, const Eigen::VectorXd& weights_row);

/// min(1, tau / |v|) v; requires tau > 0.
Eigen::VectorXd clip(const Eigen::VectorXd& v, double tau);

Eigen::VectorXd aggregate_robust(const Eigen::VectorXd& self_theta, const Messages& messages,
                                 const Eigen::VectorXd& weights_row, double tau,
                                 ClipReference reference);

/// Dispatches on rule.kind.
Eigen::VectorXd aggregate(const AggregationRule& rule, const Eigen::VectorXd& self_theta,
                          const Messages& messages, const Eigen::VectorXd& weights_row);

/// max_i |theta_i - mean|; requires at least two vectors.
double consensus_distance(std::span<const Eigen::VectorXd> thetas);

/// Element-wise mean; requires at least one vector.
Eigen::VectorXd mean_vector(std::span<const Eigen::VectorXd> thetas);

}  // namespace dqkl::dnet
