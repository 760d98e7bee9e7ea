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

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dqkl/data/data.hpp"
#include "dqkl/dnet/aggregation.hpp"
#include "dqkl/dnet/attacks.hpp"
#include "dqkl/dnet/topology.hpp"
#include "dqkl/qkernel/kernel.hpp"

namespace dqkl::runner {

class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class DataSource { kCheckerboard, kCsv };
enum class InitMode { kUniform, kIdentical };

/// Per-node overrides; unset fields fall back to the experiment defaults.
struct NodeOverrides {
    std::optional<dnet::NodeRole> role;
    std::optional<double> noise;
    std::optional<double> eta;
    std::optional<int> batch;
};

struct ExperimentConfig {
    // circuit
    int num_qubits = 5;
    int layers = 8;

    // data
    DataSource source = DataSource::kCheckerboard;
    data::CheckerboardSpec checkerboard;  ///< seed is overridden by data_seed
    std::string csv_path;
    std::optional<std::uint64_t> data_seed;  ///< defaults to the master seed
    double test_fraction = 0.25;
    data::PartitionStrategy partition = data::PartitionStrategy::kRegion;

    // network
    int num_nodes = 4;
    dnet::TopologyKind topology = dnet::TopologyKind::kRing;
    std::vector<std::pair<int, int>> edges;  ///< custom topology only
    dnet::AggregationRule aggregation;
    /// Element-wise variance collapses once neighbors agree, which leaves the attack inert.
    dnet::VarianceEstimator attack_variance = dnet::VarianceEstimator::kPooled;

    // noise
    qkernel::NoiseMode noise_mode = qkernel::NoiseMode::kPerGate;
    double noise = 0.0005;  ///< per-gate rate, or global rate in analytic mode
    std::optional<int> shots;

    // training
    double eta = 0.2;
    int batch = 8;
    double lambda = 0.1;
    long budget = 3000;
    double grad_threshold = 0.0;
    InitMode init = InitMode::kUniform;
    double init_scale = 0.1;

    // evaluation
    long eval_every = 10;
    double accuracy_threshold = 0.9;

    std::map<int, NodeOverrides> nodes;
    std::uint64_t seed = 0;
    bool write_gram = false;

    dnet::NodeRole role(int node) const;
    double node_noise(int node) const;
    double node_eta(int node) const;
    int node_batch(int node) const;
    qkernel::NoiseModel noise_model(int node) const;
    /// Noise of the shared evaluation model (the experiment default rate).
    qkernel::NoiseModel base_noise_model() const;
    qkernel::FeatureMapSpec feature_map() const;
    std::uint64_t effective_data_seed() const { return data_seed.value_or(seed); }

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    /// Flat dotted key = value pairs that parse back to this config.
    std::map<std::string, std::string> to_key_values() const;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown keys, repeated
/// keys and bad values raise ConfigError naming the line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Applies one key = value pair; used by the parser and for command-line overrides.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

std::string serialize_config(const ExperimentConfig& config);

}  // namespace dqkl::runner
