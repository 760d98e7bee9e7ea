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


#include "dqkl/dnet/aggregation.hpp"

#include <cmath>
#include <sstream>

namespace dqkl::dnet {

namespace {

const Eigen::VectorXd& message_for(const Messages& messages, int j) {
    const auto it = messages.find(j);
    if (it == messages.end()) {
        throw MissingMessageError("no message from node " + std::to_string(j));
    }
    return it->second;
}

template <class Term>
Eigen::VectorXd weighted_sum(const Messages& messages, const Eigen::VectorXd& weights_row,
                             Term term) {
    Eigen::VectorXd out;
    for (Eigen::Index j = 0; j < weights_row.size(); ++j) {
        if (weights_row[j] <= 0.0) continue;
        const auto& theta = message_for(messages, static_cast<int>(j));
        if (out.size() == 0) {
            out = Eigen::VectorXd::Zero(theta.size());
        } else if (theta.size() != out.size()) {
            throw std::invalid_argument("messages differ in length");
        }
        out += weights_row[j] * term(theta);
    }
    if (out.size() == 0) throw std::invalid_argument("weights row has no positive entry");
    return out;
}

}  // namespace

void AggregationRule::validate() const {
    if (kind == Kind::kRobustClip && !(tau > 0.0 && std::isfinite(tau))) {
        throw std::invalid_argument("clipping threshold must be positive");
    }
}

std::string AggregationRule::str() const {
    if (kind == Kind::kWeightedAverage) return "plain";
    std::ostringstream out;
    out << "robust(tau=" << tau << ", "
        << (reference == ClipReference::kSelfCentered ? "self_centered" : "literal") << ")";
    return out.str();
}

Eigen::VectorXd aggregate_plain(const Messages& messages, const Eigen::VectorXd& weights_row) {
    return weighted_sum(messages, weights_row, [](const Eigen::VectorXd& v) { return v; });
}

Eigen::VectorXd clip(const Eigen::VectorXd& v, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("clipping threshold must be positive");
    const double norm = v.norm();
    if (norm <= tau) return v;
    return (tau / norm) * v;
}

Eigen::VectorXd aggregate_robust(const Eigen::VectorXd& self_theta, const Messages& messages,
                                 const Eigen::VectorXd& weights_row, double tau,
                                 ClipReference reference) {
    if (!(tau > 0.0)) throw std::invalid_argument("clipping threshold must be positive");
    if (reference == ClipReference::kLiteral) {
        return weighted_sum(messages, weights_row,
                            [tau](const Eigen::VectorXd& v) { return clip(v, tau); });
    }
    return weighted_sum(messages, weights_row, [&](const Eigen::VectorXd& v) {
        if (v.size() != self_theta.size()) throw std::invalid_argument("messages differ in length");
        return Eigen::VectorXd(self_theta + clip(v - self_theta, tau));
    });
}

Eigen::VectorXd aggregate(const AggregationRule& rule, const Eigen::VectorXd& self_theta,
                          const Messages& messages, const Eigen::VectorXd& weights_row) {
    rule.validate();
    if (rule.kind == AggregationRule::Kind::kWeightedAverage) {
        return aggregate_plain(messages, weights_row);
    }
    return aggregate_robust(self_theta, messages, weights_row, rule.tau, rule.reference);
}

Eigen::VectorXd mean_vector(std::span<const Eigen::VectorXd> thetas) {
    if (thetas.empty()) throw std::invalid_argument("mean of no vectors");
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(thetas.front().size());
    for (const auto& t : thetas) {
        if (t.size() != sum.size()) throw std::invalid_argument("vectors differ in length");
        sum += t;
    }
    return sum / static_cast<double>(thetas.size());
}

double consensus_distance(std::span<const Eigen::VectorXd> thetas) {
    if (thetas.size() < 2) throw std::invalid_argument("consensus distance needs two vectors");
    const Eigen::VectorXd mean = mean_vector(thetas);
    double worst = 0.0;
    for (const auto& t : thetas) worst = std::max(worst, (t - mean).norm());
    return worst;
}

}  // namespace dqkl::dnet
