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

#include <algorithm>
#include <stdexcept>

#include "dqkl/learn/alignment.hpp"
#include "dqkl/runner/experiment.hpp"

namespace dqkl::runner {

namespace {

struct Encoded {
    std::vector<qsim::Matrix> states;
    Eigen::VectorXd labels;
};

Encoded encode(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
               const learn::LabeledDataset& data, const qkernel::NoiseModel& noise) {
    if (data.empty()) throw std::invalid_argument("cannot score with an empty split");
    return {learn::encode_points(spec, theta, data, noise), data.labels()};
}

double test(const learn::RidgeModel& model, const Encoded& train, const Encoded& eval,
            const qkernel::NoiseModel& noise, Rng* rng) {
    return learn::accuracy(model, learn::cross_gram_from_states(eval.states, train.states, noise, rng),
                           eval.labels);
}

}  // namespace

double model_accuracy(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
                      const learn::LabeledDataset& train, const learn::LabeledDataset& test_set,
                      const qkernel::NoiseModel& noise, double lambda, Rng* shot_rng) {
    const auto tr = encode(spec, theta, train, noise);
    const auto te = encode(spec, theta, test_set, noise);
    const auto model =
        learn::fit_ridge(learn::gram_from_states(tr.states, noise, shot_rng), tr.labels, lambda);
    return test(model, tr, te, noise, shot_rng);
}

learn::ScoreReport evaluate_scores(const qkernel::FeatureMapSpec& spec, const NodeState& node,
                                   const learn::LabeledDataset& global_train,
                                   const learn::LabeledDataset& global_test, double lambda,
                                   Rng* shot_rng) {
    const auto local_train = encode(spec, node.theta, node.train, node.noise);
    const auto local_test = encode(spec, node.theta, node.test, node.noise);
    const auto all_train = encode(spec, node.theta, global_train, node.noise);
    const auto all_test = encode(spec, node.theta, global_test, node.noise);

    learn::ScoreReport report;
    const auto local_model = learn::fit_ridge(
        learn::gram_from_states(local_train.states, node.noise, shot_rng), local_train.labels, lambda);
    report.score1 = test(local_model, local_train, local_test, node.noise, shot_rng);
    report.score2 = test(local_model, local_train, all_test, node.noise, shot_rng);

    const auto k_global = learn::gram_from_states(all_train.states, node.noise, shot_rng);
    const auto global_model = learn::fit_ridge(k_global, all_train.labels, lambda);
    report.score3 = test(global_model, all_train, all_test, node.noise, shot_rng);
    report.alignment = learn::alignment(k_global, all_train.labels);
    return report;
}

learn::ScoreReport honest_average(const std::vector<NodeScore>& scores) {
    learn::ScoreReport avg;
    int count = 0;
    for (const auto& s : scores) {
        if (s.role != dnet::NodeRole::kHonest) continue;
        avg.score1 += s.report.score1;
        avg.score2 += s.report.score2;
        avg.score3 += s.report.score3;
        avg.alignment += s.report.alignment;
        avg.iterations = std::max(avg.iterations, s.report.iterations);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("no honest scores to average");
    avg.score1 /= count;
    avg.score2 /= count;
    avg.score3 /= count;
    avg.alignment /= count;
    return avg;
}

}  // namespace dqkl::runner
