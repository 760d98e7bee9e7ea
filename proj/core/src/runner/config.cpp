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


#include "dqkl/runner/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string_view>

namespace dqkl::runner {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string fmt(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

template <class T>
T parse_number(const std::string& key, std::string_view value) {
    T out{};
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc() || end != value.data() + value.size()) {
        throw ConfigError("invalid value '" + std::string(value) + "' for " + key);
    }
    return out;
}

bool parse_bool(const std::string& key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("invalid boolean '" + std::string(value) + "' for " + key);
}

template <class E>
E parse_enum(const std::string& key, std::string_view value,
             std::initializer_list<std::pair<std::string_view, E>> options) {
    for (const auto& [name, v] : options) {
        if (value == name) return v;
    }
    std::string allowed;
    for (const auto& [name, v] : options) allowed += (allowed.empty() ? "" : "|") + std::string(name);
    throw ConfigError("invalid value '" + std::string(value) + "' for " + key + " (expected " +
                      allowed + ")");
}

dnet::NodeRole parse_role(const std::string& key, std::string_view v) {
    return parse_enum<dnet::NodeRole>(key, v,
                                      {{"honest", dnet::NodeRole::kHonest},
                                       {"gaussian", dnet::NodeRole::kGaussianAttacker},
                                       {"signflip", dnet::NodeRole::kSignFlipAttacker}});
}

std::vector<std::pair<int, int>> parse_edges(const std::string& key, std::string_view v) {
    std::vector<std::pair<int, int>> edges;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const auto item = trim(v.substr(0, comma));
        const auto dash = item.find('-');
        if (dash == std::string_view::npos) {
            throw ConfigError("edge '" + std::string(item) + "' in " + key + " must look like a-b");
        }
        edges.emplace_back(parse_number<int>(key, trim(item.substr(0, dash))),
                           parse_number<int>(key, trim(item.substr(dash + 1))));
        if (comma == std::string_view::npos) break;
        v = v.substr(comma + 1);
    }
    return edges;
}

std::string noise_mode_name(qkernel::NoiseMode m) {
    switch (m) {
        case qkernel::NoiseMode::kExact:
            return "exact";
        case qkernel::NoiseMode::kPerGate:
            return "per_gate";
        case qkernel::NoiseMode::kGlobalAnalytic:
            return "global";
    }
    return "unknown";
}

void apply_node_setting(ExperimentConfig& c, const std::string& key, std::string_view value) {
    // node.<id>.<field>
    const std::string_view rest = std::string_view(key).substr(5);
    const auto dot = rest.find('.');
    if (dot == std::string_view::npos) throw ConfigError("unknown key " + key);
    const int id = parse_number<int>(key, rest.substr(0, dot));
    if (id < 0) throw ConfigError("negative node id in " + key);
    const std::string_view field = rest.substr(dot + 1);
    auto& node = c.nodes[id];
    if (field == "role") {
        node.role = parse_role(key, value);
    } else if (field == "noise") {
        node.noise = parse_number<double>(key, value);
    } else if (field == "eta") {
        node.eta = parse_number<double>(key, value);
    } else if (field == "batch") {
        node.batch = parse_number<int>(key, value);
    } else {
        throw ConfigError("unknown key " + key);
    }
}

}  // namespace

dnet::NodeRole ExperimentConfig::role(int node) const {
    const auto it = nodes.find(node);
    return it != nodes.end() && it->second.role ? *it->second.role : dnet::NodeRole::kHonest;
}

double ExperimentConfig::node_noise(int node) const {
    const auto it = nodes.find(node);
    return it != nodes.end() && it->second.noise ? *it->second.noise : noise;
}

double ExperimentConfig::node_eta(int node) const {
    const auto it = nodes.find(node);
    return it != nodes.end() && it->second.eta ? *it->second.eta : eta;
}

int ExperimentConfig::node_batch(int node) const {
    const auto it = nodes.find(node);
    return it != nodes.end() && it->second.batch ? *it->second.batch : batch;
}

qkernel::NoiseModel ExperimentConfig::noise_model(int node) const {
    qkernel::NoiseModel m{noise_mode, noise_mode == qkernel::NoiseMode::kExact ? 0.0 : node_noise(node),
                          shots};
    return m;
}

qkernel::NoiseModel ExperimentConfig::base_noise_model() const {
    return {noise_mode, noise_mode == qkernel::NoiseMode::kExact ? 0.0 : noise, shots};
}

qkernel::FeatureMapSpec ExperimentConfig::feature_map() const {
    return qkernel::FeatureMapSpec::alternating(num_qubits, layers, 2);
}

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    auto probability = [&](double p, const std::string& what) {
        require(p >= 0.0 && p <= 1.0, what + " must lie in [0, 1]");
    };
    require(num_qubits >= 2 && num_qubits <= 10, "circuit.qubits must be in [2, 10]");
    require(layers >= 1, "circuit.layers must be at least 1");
    if (source == DataSource::kCsv) require(!csv_path.empty(), "data.path is required for CSV data");
    checkerboard.validate();
    require(test_fraction > 0.0 && test_fraction < 1.0, "data.test_fraction must be in (0, 1)");
    require(num_nodes >= 1, "network.nodes must be at least 1");
    if (topology == dnet::TopologyKind::kCustom) {
        for (const auto& [a, b] : edges) {
            require(a >= 0 && a < num_nodes && b >= 0 && b < num_nodes,
                    "network.edges references a node outside the network");
        }
    } else {
        require(edges.empty(), "network.edges is only valid for a custom topology");
    }
    aggregation.validate();
    probability(noise, "noise.rate");
    if (shots) require(*shots >= 1, "noise.shots must be at least 1");
    require(std::isfinite(eta) && eta >= 0.0, "train.eta must be nonnegative");
    require(batch >= 2, "train.batch must be at least 2");
    require(lambda > 0.0, "train.lambda must be positive");
    require(budget >= 1, "train.budget must be at least 1");
    require(grad_threshold >= 0.0, "train.grad_threshold must be nonnegative");
    require(init_scale >= 0.0, "train.init_scale must be nonnegative");
    require(eval_every >= 1, "eval.every must be at least 1");
    int honest = 0;
    for (int i = 0; i < num_nodes; ++i) {
        if (role(i) == dnet::NodeRole::kHonest) ++honest;
    }
    require(honest >= 1, "at least one node must be honest");
    for (const auto& [id, o] : nodes) {
        require(id < num_nodes, "node." + std::to_string(id) + " is outside the network");
        if (o.noise) probability(*o.noise, "node." + std::to_string(id) + ".noise");
        if (o.eta) require(*o.eta >= 0.0, "node." + std::to_string(id) + ".eta must be nonnegative");
        if (o.batch) require(*o.batch >= 2, "node." + std::to_string(id) + ".batch must be at least 2");
    }
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    const std::string_view v = trim(raw);
    using qkernel::NoiseMode;
    if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, v);
    } else if (key == "circuit.qubits") {
        c.num_qubits = parse_number<int>(key, v);
    } else if (key == "circuit.layers") {
        c.layers = parse_number<int>(key, v);
    } else if (key == "data.source") {
        c.source = parse_enum<DataSource>(key, v, {{"checkerboard", DataSource::kCheckerboard},
                                                   {"csv", DataSource::kCsv}});
    } else if (key == "data.path") {
        c.csv_path = std::string(v);
    } else if (key == "data.seed") {
        c.data_seed = parse_number<std::uint64_t>(key, v);
    } else if (key == "data.points_per_cell") {
        c.checkerboard.points_per_cell = parse_number<int>(key, v);
    } else if (key == "data.sigma") {
        c.checkerboard.sigma = parse_number<double>(key, v);
    } else if (key == "data.grid") {
        c.checkerboard.grid = parse_number<int>(key, v);
    } else if (key == "data.test_fraction") {
        c.test_fraction = parse_number<double>(key, v);
    } else if (key == "partition.strategy") {
        c.partition = parse_enum<data::PartitionStrategy>(
            key, v,
            {{"region", data::PartitionStrategy::kRegion},
             {"random", data::PartitionStrategy::kRandom},
             {"replicated", data::PartitionStrategy::kReplicated}});
    } else if (key == "network.nodes") {
        c.num_nodes = parse_number<int>(key, v);
    } else if (key == "network.topology") {
        c.topology = parse_enum<dnet::TopologyKind>(key, v,
                                                    {{"ring", dnet::TopologyKind::kRing},
                                                     {"complete", dnet::TopologyKind::kComplete},
                                                     {"custom", dnet::TopologyKind::kCustom}});
    } else if (key == "network.edges") {
        c.edges = parse_edges(key, v);
    } else if (key == "aggregation.rule") {
        c.aggregation.kind = parse_enum<dnet::AggregationRule::Kind>(
            key, v,
            {{"plain", dnet::AggregationRule::Kind::kWeightedAverage},
             {"robust", dnet::AggregationRule::Kind::kRobustClip}});
    } else if (key == "aggregation.tau") {
        c.aggregation.tau = parse_number<double>(key, v);
    } else if (key == "aggregation.reference") {
        c.aggregation.reference = parse_enum<dnet::ClipReference>(
            key, v,
            {{"self_centered", dnet::ClipReference::kSelfCentered},
             {"literal", dnet::ClipReference::kLiteral}});
    } else if (key == "attack.variance") {
        c.attack_variance = parse_enum<dnet::VarianceEstimator>(
            key, v,
            {{"elementwise", dnet::VarianceEstimator::kElementwise},
             {"pooled", dnet::VarianceEstimator::kPooled}});
    } else if (key == "noise.mode") {
        c.noise_mode = parse_enum<NoiseMode>(key, v,
                                             {{"exact", NoiseMode::kExact},
                                              {"per_gate", NoiseMode::kPerGate},
                                              {"global", NoiseMode::kGlobalAnalytic}});
    } else if (key == "noise.rate") {
        c.noise = parse_number<double>(key, v);
    } else if (key == "noise.shots") {
        if (v == "none") {
            c.shots.reset();
        } else {
            c.shots = parse_number<int>(key, v);
        }
    } else if (key == "train.eta") {
        c.eta = parse_number<double>(key, v);
    } else if (key == "train.batch") {
        c.batch = parse_number<int>(key, v);
    } else if (key == "train.lambda") {
        c.lambda = parse_number<double>(key, v);
    } else if (key == "train.budget") {
        c.budget = parse_number<long>(key, v);
    } else if (key == "train.grad_threshold") {
        c.grad_threshold = parse_number<double>(key, v);
    } else if (key == "train.init") {
        c.init = parse_enum<InitMode>(key, v,
                                      {{"uniform", InitMode::kUniform},
                                       {"identical", InitMode::kIdentical}});
    } else if (key == "train.init_scale") {
        c.init_scale = parse_number<double>(key, v);
    } else if (key == "eval.every") {
        c.eval_every = parse_number<long>(key, v);
    } else if (key == "eval.threshold") {
        c.accuracy_threshold = parse_number<double>(key, v);
    } else if (key == "output.gram") {
        c.write_gram = parse_bool(key, v);
    } else if (key.starts_with("node.")) {
        apply_node_setting(c, key, v);
    } else {
        throw ConfigError("unknown key " + key);
    }
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string raw;
    std::set<std::string> seen;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        const std::string where = "line " + std::to_string(line) + ": ";
        if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
        const std::string key(trim(s.substr(0, eq)));
        if (!seen.insert(key).second) throw ConfigError(where + "duplicate key " + key);
        try {
            apply_setting(config, key, std::string(trim(s.substr(eq + 1))));
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::map<std::string, std::string> ExperimentConfig::to_key_values() const {
    std::map<std::string, std::string> kv;
    kv["seed"] = std::to_string(seed);
    kv["circuit.qubits"] = std::to_string(num_qubits);
    kv["circuit.layers"] = std::to_string(layers);
    kv["data.source"] = source == DataSource::kCsv ? "csv" : "checkerboard";
    if (!csv_path.empty()) kv["data.path"] = csv_path;
    if (data_seed) kv["data.seed"] = std::to_string(*data_seed);
    kv["data.points_per_cell"] = std::to_string(checkerboard.points_per_cell);
    kv["data.sigma"] = fmt(checkerboard.sigma);
    kv["data.grid"] = std::to_string(checkerboard.grid);
    kv["data.test_fraction"] = fmt(test_fraction);
    kv["partition.strategy"] = data::to_string(partition);
    kv["network.nodes"] = std::to_string(num_nodes);
    kv["network.topology"] = dnet::to_string(topology);
    if (!edges.empty()) {
        std::string e;
        for (const auto& [a, b] : edges) {
            e += (e.empty() ? "" : ",") + std::to_string(a) + "-" + std::to_string(b);
        }
        kv["network.edges"] = e;
    }
    kv["aggregation.rule"] =
        aggregation.kind == dnet::AggregationRule::Kind::kWeightedAverage ? "plain" : "robust";
    kv["aggregation.tau"] = fmt(aggregation.tau);
    kv["aggregation.reference"] =
        aggregation.reference == dnet::ClipReference::kSelfCentered ? "self_centered" : "literal";
    kv["attack.variance"] =
        attack_variance == dnet::VarianceEstimator::kElementwise ? "elementwise" : "pooled";
    kv["noise.mode"] = noise_mode_name(noise_mode);
    kv["noise.rate"] = fmt(noise);
    kv["noise.shots"] = shots ? std::to_string(*shots) : "none";
    kv["train.eta"] = fmt(eta);
    kv["train.batch"] = std::to_string(batch);
    kv["train.lambda"] = fmt(lambda);
    kv["train.budget"] = std::to_string(budget);
    kv["train.grad_threshold"] = fmt(grad_threshold);
    kv["train.init"] = init == InitMode::kUniform ? "uniform" : "identical";
    kv["train.init_scale"] = fmt(init_scale);
    kv["eval.every"] = std::to_string(eval_every);
    kv["eval.threshold"] = fmt(accuracy_threshold);
    kv["output.gram"] = write_gram ? "true" : "false";
    for (const auto& [id, o] : nodes) {
        const std::string p = "node." + std::to_string(id) + ".";
        if (o.role) kv[p + "role"] = dnet::to_string(*o.role);
        if (o.noise) kv[p + "noise"] = fmt(*o.noise);
        if (o.eta) kv[p + "eta"] = fmt(*o.eta);
        if (o.batch) kv[p + "batch"] = std::to_string(*o.batch);
    }
    return kv;
}

std::string serialize_config(const ExperimentConfig& config) {
    std::string out;
    for (const auto& [k, v] : config.to_key_values()) out += k + " = " + v + "\n";
    return out;
}

}  // namespace dqkl::runner
