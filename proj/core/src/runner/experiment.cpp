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


#include "dqkl/runner/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "dqkl/dnet/aggregation.hpp"
#include "dqkl/dnet/attacks.hpp"
#include "dqkl/dnet/topology.hpp"
#include "dqkl/learn/alignment.hpp"
#include "dqkl/util/random.hpp"

namespace dqkl::runner {

namespace {

// Coordinates of the shot streams used during evaluation.
constexpr std::uint64_t kEvalStream = 0x65766131ULL;
constexpr std::uint64_t kScoreStream = 0x73636f72ULL;

std::vector<std::size_t> draw_batch(std::size_t n, int q, Rng& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (static_cast<std::size_t>(q) >= n) return idx;
    // Partial Fisher-Yates: the first q slots become a uniform sample without replacement.
    for (std::size_t j = 0; j < static_cast<std::size_t>(q); ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, n - 1);
        std::swap(idx[j], idx[pick(rng)]);
    }
    idx.resize(static_cast<std::size_t>(q));
    std::sort(idx.begin(), idx.end());
    return idx;
}

qkernel::ParameterVector initial_theta(const ExperimentConfig& config, int node) {
    const int stream = config.init == InitMode::kIdentical ? 0 : node;
    auto rng = make_stream(config.seed, StreamTag::kInit, {static_cast<std::uint64_t>(stream)});
    std::uniform_real_distribution<double> u(-config.init_scale, config.init_scale);
    qkernel::ParameterVector theta(config.feature_map().num_parameters());
    for (Eigen::Index t = 0; t < theta.size(); ++t) theta[t] = config.init_scale > 0.0 ? u(rng) : 0.0;
    return theta;
}

std::vector<qkernel::ParameterVector> honest_thetas(const std::vector<NodeState>& nodes) {
    std::vector<qkernel::ParameterVector> out;
    for (const auto& n : nodes) {
        if (n.honest()) out.push_back(n.theta);
    }
    return out;
}

std::vector<std::size_t> sorted_union(std::vector<std::size_t> a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

NodeState make_node(const ExperimentConfig& config, int id, learn::LabeledDataset train,
                    learn::LabeledDataset test) {
    NodeState node;
    node.id = id;
    node.role = config.role(id);
    node.theta = initial_theta(config, id);
    node.train = std::move(train);
    node.test = std::move(test);
    node.noise = config.noise_model(id);
    node.eta = config.node_eta(id);
    node.batch = config.node_batch(id);
    return node;
}

struct Network {
    dnet::Topology topology;
    dnet::WeightMatrix weights;
};

Network build_network(const ExperimentConfig& config) {
    auto topology = [&] {
        switch (config.topology) {
            case dnet::TopologyKind::kRing:
                return dnet::Topology::ring(config.num_nodes);
            case dnet::TopologyKind::kComplete:
                return dnet::Topology::complete(config.num_nodes);
            case dnet::TopologyKind::kCustom:
                break;
        }
        return dnet::Topology::custom(config.num_nodes, config.edges);
    }();
    auto weights = dnet::metropolis_weights(topology);
    if (!(dnet::spectral_gap(weights) < 1.0)) {
        throw ConfigError("mixing matrix has no spectral gap; consensus cannot form");
    }
    return {std::move(topology), std::move(weights)};
}

Eigen::VectorXd craft(const ExperimentConfig& config, const NodeState& attacker,
                      std::span<const Eigen::VectorXd> received, long round) {
    if (attacker.role == dnet::NodeRole::kSignFlipAttacker) return dnet::attack_signflip(received);
    auto rng = make_stream(config.seed, StreamTag::kAttack,
                           {static_cast<std::uint64_t>(attacker.id), static_cast<std::uint64_t>(round)});
    return dnet::attack_gaussian(received, rng, config.attack_variance);
}

RunResult simulate(const ExperimentConfig& config, RunMode mode, std::vector<NodeState> nodes,
                   const Network* network, const ExperimentData& data, const RunOptions& options) {
    const auto spec = config.feature_map();
    const auto n = nodes.size();
    RunResult result;
    result.mode = mode;

    auto evaluate_mean = [&](long round) {
        const auto thetas = honest_thetas(nodes);
        auto rng = make_stream(config.seed, StreamTag::kShots,
                               {kEvalStream, static_cast<std::uint64_t>(round)});
        const double acc = model_accuracy(spec, dnet::mean_vector(thetas), data.global_train,
                                          data.global_test, config.base_noise_model(),
                                          config.lambda, &rng);
        result.evaluations.push_back({round, acc});
    };

    for (long k = 1; k <= config.budget; ++k) {
        const auto started = std::chrono::steady_clock::now();
        RoundSnapshot snap;
        snap.round = k;
        snap.before.resize(n);
        snap.half_step.resize(n);
        snap.gradients.resize(n);
        snap.after.resize(n);
        for (std::size_t i = 0; i < n; ++i) snap.before[i] = nodes[i].theta;

        RoundLog log;
        log.round = k;
        log.nodes.resize(n);

        // Local half steps on fresh subsamples.
        double grad_norm_sum = 0.0;
        int honest = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto& node = nodes[i];
            auto& rec = log.nodes[i];
            rec.node = node.id;
            rec.role = node.role;
            if (!node.honest()) continue;
            auto rng = make_stream(config.seed, StreamTag::kSubsample,
                                   {static_cast<std::uint64_t>(node.id), static_cast<std::uint64_t>(k)});
            const auto batch = node.train.subset(draw_batch(node.train.size(), node.batch, rng));
            const auto eval = learn::evaluate_loss(batch, node.theta, spec, node.noise.without_shots());
            snap.gradients[i] = eval.grad;
            snap.half_step[i] = node.theta - node.eta * eval.grad;
            rec.loss = eval.loss;
            rec.alignment = eval.alignment;
            rec.grad_norm = eval.grad.norm();
            grad_norm_sum += *rec.grad_norm;
            ++honest;
        }

        // Attackers read the honest half steps (and other attackers' previous
        // messages) of their neighbors, then everything is delivered at once.
        if (mode == RunMode::kDecentralized) {
            std::vector<qkernel::ParameterVector> crafted(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (nodes[i].honest()) continue;
                std::vector<Eigen::VectorXd> received;
                for (int j : network->topology.neighbors(nodes[i].id)) {
                    const auto uj = static_cast<std::size_t>(j);
                    received.push_back(nodes[uj].honest() ? snap.half_step[uj] : nodes[uj].theta);
                }
                crafted[i] = craft(config, nodes[i], received, k);
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (!nodes[i].honest()) snap.half_step[i] = crafted[i];
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            auto& node = nodes[i];
            if (mode == RunMode::kDecentralized && node.honest()) {
                dnet::Messages messages;
                for (int j : network->topology.neighborhood(node.id)) {
                    messages.emplace(j, snap.half_step[static_cast<std::size_t>(j)]);
                }
                node.theta = dnet::aggregate(config.aggregation, snap.half_step[i], messages,
                                             network->weights.row(node.id).transpose());
            } else if (node.honest() || mode == RunMode::kDecentralized) {
                node.theta = snap.half_step[i];
            }
            snap.after[i] = node.theta;
            log.nodes[i].param_norm = node.theta.norm();
        }

        const auto thetas = honest_thetas(nodes);
        log.consensus_dist = thetas.size() >= 2 ? dnet::consensus_distance(thetas) : 0.0;
        log.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        result.rounds.push_back(std::move(log));
        result.rounds_run = k;
        if (options.observer) options.observer(snap);

        if (k % config.eval_every == 0) evaluate_mean(k);
        if (honest > 0 && grad_norm_sum / honest < config.grad_threshold) {
            result.converged = true;
            break;
        }
    }
    if (result.evaluations.empty() || result.evaluations.back().round != result.rounds_run) {
        evaluate_mean(result.rounds_run);
    }
    result.rounds_to_threshold =
        iteration_to_threshold(result, "mean_accuracy", config.accuracy_threshold);

    if (options.final_scores) {
        for (const auto& node : nodes) {
            if (!node.honest()) continue;
            auto rng = make_stream(config.seed, StreamTag::kShots,
                                   {kScoreStream, static_cast<std::uint64_t>(node.id)});
            NodeScore s{node.id, node.role,
                        evaluate_scores(spec, node, data.global_train, data.global_test, config.lambda, &rng)};
            s.report.iterations = result.rounds_run;
            result.scores.push_back(s);
        }
    }
    if (config.write_gram) {
        result.final_gram = learn::gram(spec, dnet::mean_vector(honest_thetas(nodes)),
                                        data.global_train, config.base_noise_model().without_shots());
    }
    result.nodes = std::move(nodes);
    return result;
}

std::vector<NodeState> network_nodes(const ExperimentConfig& config, const ExperimentData& data) {
    if (data.node_train.size() != static_cast<std::size_t>(config.num_nodes)) {
        throw ConfigError("data is split for a different node count");
    }
    std::vector<NodeState> nodes;
    for (int i = 0; i < config.num_nodes; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        nodes.push_back(make_node(config, i, data.node_train[ui], data.node_test[ui]));
    }
    return nodes;
}

}  // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::kDecentralized:
            return "decentralized";
        case RunMode::kCentralized:
            return "centralized";
        case RunMode::kLocal:
            return "local";
    }
    return "unknown";
}

RunMode parse_mode(std::string_view name) {
    if (name == "decentralized") return RunMode::kDecentralized;
    if (name == "centralized") return RunMode::kCentralized;
    if (name == "local") return RunMode::kLocal;
    throw ConfigError("unknown mode '" + std::string(name) + "'");
}

ExperimentData prepare_data(const ExperimentConfig& config) {
    config.validate();
    ExperimentData out;
    if (config.source == DataSource::kCsv) {
        out.all = data::load_csv(config.csv_path);
    } else {
        auto spec = config.checkerboard;
        spec.seed = config.effective_data_seed();
        out.all = data::gen_checkerboard(spec);
    }
    const data::PartitionPlan plan{config.partition, config.num_nodes, config.seed,
                                   config.checkerboard.grid};
    const auto parts = data::partition_indices(out.all, plan);

    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;
    for (const auto& part : parts) {
        const auto split = data::train_test_split(out.all.subset(part), config.test_fraction, config.seed);
        std::vector<std::size_t> node_train;
        std::vector<std::size_t> node_test;
        for (std::size_t k : split.train_indices) node_train.push_back(part[k]);
        for (std::size_t k : split.test_indices) node_test.push_back(part[k]);
        out.node_train.push_back(out.all.subset(node_train));
        out.node_test.push_back(out.all.subset(node_test));
        train_idx.insert(train_idx.end(), node_train.begin(), node_train.end());
        test_idx.insert(test_idx.end(), node_test.begin(), node_test.end());
    }
    train_idx = sorted_union(std::move(train_idx));
    test_idx = sorted_union(std::move(test_idx));
    std::vector<std::size_t> both;
    std::set_intersection(train_idx.begin(), train_idx.end(), test_idx.begin(), test_idx.end(),
                          std::back_inserter(both));
    if (!both.empty()) throw std::logic_error("a point landed on both sides of the global split");
    out.global_train = out.all.subset(train_idx);
    out.global_test = out.all.subset(test_idx);
    return out;
}

RunResult run_decentralized(const ExperimentConfig& config, const ExperimentData& data,
                            const RunOptions& options) {
    config.validate();
    const auto network = build_network(config);
    return simulate(config, RunMode::kDecentralized, network_nodes(config, data), &network, data,
                    options);
}

RunResult run_centralized(const ExperimentConfig& config, const ExperimentData& data,
                          const RunOptions& options) {
    config.validate();
    NodeState node = make_node(config, 0, data.global_train, data.global_test);
    node.role = dnet::NodeRole::kHonest;
    node.noise = config.base_noise_model();
    node.eta = config.eta;
    node.batch = config.batch;
    return simulate(config, RunMode::kCentralized, {node}, nullptr, data, options);
}

RunResult run_local(const ExperimentConfig& config, const ExperimentData& data,
                    const RunOptions& options) {
    config.validate();
    return simulate(config, RunMode::kLocal, network_nodes(config, data), nullptr, data, options);
}

RunResult run_decentralized(const ExperimentConfig& config, const RunOptions& options) {
    return run_decentralized(config, prepare_data(config), options);
}

RunResult run_centralized(const ExperimentConfig& config, const RunOptions& options) {
    return run_centralized(config, prepare_data(config), options);
}

RunResult run_local(const ExperimentConfig& config, const RunOptions& options) {
    return run_local(config, prepare_data(config), options);
}

RunResult run(const ExperimentConfig& config, RunMode mode, const RunOptions& options) {
    switch (mode) {
        case RunMode::kDecentralized:
            return run_decentralized(config, options);
        case RunMode::kCentralized:
            return run_centralized(config, options);
        case RunMode::kLocal:
            return run_local(config, options);
    }
    throw ConfigError("unknown mode");
}

std::optional<long> iteration_to_threshold(const RunResult& result, std::string_view metric,
                                           double threshold) {
    if (metric == "mean_accuracy") {
        if (result.evaluations.empty()) throw std::invalid_argument("no evaluations recorded");
        for (const auto& e : result.evaluations) {
            if (e.accuracy >= threshold) return e.round;
        }
        return std::nullopt;
    }
    if (metric == "mean_alignment") {
        if (result.rounds.empty()) throw std::invalid_argument("no rounds recorded");
        for (const auto& r : result.rounds) {
            double sum = 0.0;
            int count = 0;
            for (const auto& rec : r.nodes) {
                if (rec.alignment) {
                    sum += *rec.alignment;
                    ++count;
                }
            }
            if (count > 0 && sum / count >= threshold) return r.round;
        }
        return std::nullopt;
    }
    throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

}  // namespace dqkl::runner
