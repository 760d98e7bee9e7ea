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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqkl/learn/dataset.hpp"
#include "dqkl/learn/gram.hpp"
#include "dqkl/learn/ridge.hpp"
#include "dqkl/runner/config.hpp"

namespace dqkl::runner {

enum class RunMode { kDecentralized, kCentralized, kLocal };

std::string to_string(RunMode mode);
RunMode parse_mode(std::string_view name);

/// Train/test material shared by every mode. The global sets are the unions
/// of the node splits, so all modes train and test on the same points.
struct ExperimentData {
    learn::LabeledDataset all;
    std::vector<learn::LabeledDataset> node_train;
    std::vector<learn::LabeledDataset> node_test;
    learn::LabeledDataset global_train;
    learn::LabeledDataset global_test;
};

ExperimentData prepare_data(const ExperimentConfig& config);

struct NodeState {
    int id = 0;
    dnet::NodeRole role = dnet::NodeRole::kHonest;
    /// Honest nodes: current parameters. Attackers: last crafted message.
    qkernel::ParameterVector theta;
    learn::LabeledDataset train;
    learn::LabeledDataset test;
    qkernel::NoiseModel noise;
    double eta = 0.0;
    int batch = 0;

    bool honest() const { return role == dnet::NodeRole::kHonest; }
};

struct NodeRecord {
    int node = 0;
    dnet::NodeRole role = dnet::NodeRole::kHonest;
    /// Unset for attackers, which do not train.
    std::optional<double> loss;
    std::optional<double> alignment;
    std::optional<double> grad_norm;
    double param_norm = 0.0;
};

struct RoundLog {
    long round = 0;
    std::vector<NodeRecord> nodes;
    /// Over honest nodes after aggregation; 0 with a single honest node.
    double consensus_dist = 0.0;
    double duration_seconds = 0.0;
};

/// Accuracy of the mean honest parameters on the global test set.
struct Evaluation {
    long round = 0;
    double accuracy = 0.0;
};

struct NodeScore {
    int node = 0;
    dnet::NodeRole role = dnet::NodeRole::kHonest;
    learn::ScoreReport report;
};

/// Everything a round exposes to observers; vectors are indexed by node id.
struct RoundSnapshot {
    long round = 0;
    std::vector<qkernel::ParameterVector> before;
    std::vector<qkernel::ParameterVector> half_step;  ///< messages as sent, crafted for attackers
    std::vector<qkernel::ParameterVector> gradients;  ///< empty for attackers
    std::vector<qkernel::ParameterVector> after;
};

struct RunOptions {
    std::function<void(const RoundSnapshot&)> observer;
    /// Compute per-node scores after the last round.
    bool final_scores = true;
};

struct RunResult {
    RunMode mode = RunMode::kDecentralized;
    std::vector<NodeState> nodes;
    std::vector<RoundLog> rounds;
    std::vector<Evaluation> evaluations;
    std::vector<NodeScore> scores;
    long rounds_run = 0;
    bool converged = false;  ///< stopped on the gradient-norm threshold
    std::optional<long> rounds_to_threshold;
    /// Global-train Gram matrix of the mean honest parameters at the end.
    std::optional<learn::GramMatrix> final_gram;
};

RunResult run_decentralized(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_centralized(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run_local(const ExperimentConfig& config, const RunOptions& options = {});
RunResult run(const ExperimentConfig& config, RunMode mode, const RunOptions& options = {});

/// Same loops on explicit data, for callers that build their own splits.
RunResult run_decentralized(const ExperimentConfig& config, const ExperimentData& data,
                            const RunOptions& options = {});
RunResult run_centralized(const ExperimentConfig& config, const ExperimentData& data,
                          const RunOptions& options = {});
RunResult run_local(const ExperimentConfig& config, const ExperimentData& data,
                    const RunOptions& options = {});

/// Score1/2/3 of one node with its parameters and noise model.
learn::ScoreReport evaluate_scores(const qkernel::FeatureMapSpec& spec, const NodeState& node, const learn::LabeledDataset& global_train,
                                   const learn::LabeledDataset& global_test, double lambda,
                                   Rng* shot_rng = nullptr);

/// Whole-test accuracy of a ridge model fitted on `train` with parameters theta.
double model_accuracy(const qkernel::FeatureMapSpec& spec, const qkernel::ParameterVector& theta,
                      const learn::LabeledDataset& train, const learn::LabeledDataset& test,
                      const qkernel::NoiseModel& noise, double lambda, Rng* shot_rng = nullptr);

/// First round whose metric reaches `threshold`. Metrics: "mean_accuracy"
/// (the evaluation history) and "mean_alignment" (honest-node average from
/// the round logs). Throws std::invalid_argument for other names.
std::optional<long> iteration_to_threshold(const RunResult& result, std::string_view metric,
                                           double threshold);

/// Mean of the given scores over honest nodes.
learn::ScoreReport honest_average(const std::vector<NodeScore>& scores);

}  // namespace dqkl::runner
