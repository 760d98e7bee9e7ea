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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"

#include "dqkl/runner/config.hpp"
#include "dqkl/runner/experiment.hpp"
#include "dqkl/runner/output.hpp"

using namespace dqkl;
using namespace dqkl::runner;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig c;
    c.seed = 3;
    c.num_qubits = 3;
    c.layers = 2;
    c.checkerboard.points_per_cell = 2;
    c.budget = 4;
    c.eval_every = 2;
    c.batch = 4;
    c.noise = 0.001;
    return c;
}

std::string jsonl(const RunResult& r) {
    std::ostringstream out;
    write_rounds_jsonl(out, r);
    return out.str();
}

double max_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Config, parse_keys) {
    auto c = parse_config(
        "# comment\n"
        "seed = 9\n"
        "circuit.qubits = 4   # trailing\n"
        "network.topology = custom\n"
        "network.nodes = 3\n"
        "network.edges = 0-1, 1-2\n"
        "aggregation.rule = robust\n"
        "aggregation.tau = 0.5\n"
        "noise.mode = global\n"
        "noise.shots = 100\n"
        "node.1.role = signflip\n"
        "node.2.noise = 0.05\n");
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.num_qubits, 4);
    EXPECT_EQ(c.topology, dnet::TopologyKind::kCustom);
    EXPECT_EQ(c.edges, (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));
    EXPECT_EQ(c.aggregation.kind, dnet::AggregationRule::Kind::kRobustClip);
    EXPECT_EQ(c.aggregation.tau, 0.5);
    EXPECT_EQ(c.noise_mode, qkernel::NoiseMode::kGlobalAnalytic);
    EXPECT_EQ(c.shots, 100);
    EXPECT_EQ(c.role(1), dnet::NodeRole::kSignFlipAttacker);
    EXPECT_EQ(c.role(0), dnet::NodeRole::kHonest);
    EXPECT_EQ(c.node_noise(2), 0.05);
    EXPECT_EQ(c.node_noise(0), 0.0005);
}

TEST(Config, errors_name_the_line) {
    auto message = [](const std::string& text) -> std::string {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    EXPECT_NE(message("seed = 1\nseed = 2\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("bogus.key = 1\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("seed = 1\ntrain.eta = fast\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("no equals sign\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("noise.mode = loud\n").find("line 1"), std::string::npos);
}

TEST(Config, validation) {
    auto c = tiny_config();
    EXPECT_NO_THROW(c.validate());
    c.eta = -1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = tiny_config();
    c.nodes[7].role = dnet::NodeRole::kGaussianAttacker;
    EXPECT_THROW(c.validate(), ConfigError);
    c = tiny_config();
    c.test_fraction = 1.5;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, round_trip) {
    auto c = tiny_config();
    c.nodes[1].role = dnet::NodeRole::kGaussianAttacker;
    c.nodes[2].eta = 0.05;
    c.aggregation = dnet::AggregationRule::robust(0.25, dnet::ClipReference::kLiteral);
    c.shots = 500;
    auto back = parse_config(serialize_config(c));
    EXPECT_EQ(back.to_key_values(), c.to_key_values());
    auto copy = c;
    apply_setting(copy, "train.eta", "0.3");
    EXPECT_EQ(copy.eta, 0.3);
    EXPECT_THROW(apply_setting(copy, "train.nothing", "1"), ConfigError);
}

TEST(Runner, prepare_data_unions_node_splits) {
    auto c = tiny_config();
    auto data = prepare_data(c);
    ASSERT_EQ(data.node_train.size(), 4u);
    EXPECT_EQ(data.all.size(), 32u);
    std::size_t train = 0, test = 0;
    for (int i = 0; i < 4; ++i) {
        train += data.node_train[i].size();
        test += data.node_test[i].size();
        EXPECT_EQ(data.node_test[i].count(1), data.node_test[i].count(-1));
    }
    EXPECT_EQ(data.global_train.size(), train);
    EXPECT_EQ(data.global_test.size(), test);
    EXPECT_EQ(train + test, 32u);
}

TEST(Runner, mean_follows_average_gradient) {
    auto c = tiny_config();
    int seen = 0;
    RunOptions opts;
    opts.final_scores = false;
    opts.observer = [&](const RoundSnapshot& s) {
        Eigen::VectorXd before = Eigen::VectorXd::Zero(s.before[0].size());
        Eigen::VectorXd grad = before, after = before;
        for (std::size_t i = 0; i < s.before.size(); ++i) {
            before += s.before[i] / 4.0;
            grad += s.gradients[i] / 4.0;
            after += s.after[i] / 4.0;
            EXPECT_LT(max_diff(s.half_step[i], s.before[i] - c.eta * s.gradients[i]), 1e-15);
        }
        EXPECT_LT(max_diff(after, before - c.eta * grad), 1e-12);
        ++seen;
    };
    auto r = run_decentralized(c, opts);
    EXPECT_EQ(seen, 4);
    EXPECT_EQ(r.rounds_run, 4);
    EXPECT_EQ(r.rounds.size(), 4u);
    EXPECT_EQ(r.evaluations.size(), 2u);
    EXPECT_TRUE(r.scores.empty());
}

TEST(Runner, zero_step_only_mixes) {
    auto c = tiny_config();
    c.eta = 0;
    c.budget = 6;
    std::vector<double> dist;
    RunOptions opts;
    opts.final_scores = false;
    Eigen::VectorXd first_mean;
    opts.observer = [&](const RoundSnapshot& s) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(s.after[0].size());
        for (const auto& t : s.after) mean += t / 4.0;
        if (first_mean.size() == 0) first_mean = mean;
        EXPECT_LT(max_diff(mean, first_mean), 1e-14);
    };
    auto r = run_decentralized(c, opts);
    for (std::size_t k = 1; k < r.rounds.size(); ++k) {
        EXPECT_LE(r.rounds[k].consensus_dist, r.rounds[k - 1].consensus_dist / 3 * 1.0001 + 1e-15);
    }
}

TEST(Runner, single_node_matches_centralized) {
    auto c = tiny_config();
    c.num_nodes = 1;
    c.budget = 3;
    auto dec = run_decentralized(c);
    auto cen = run_centralized(c);
    EXPECT_EQ(jsonl(dec), jsonl(cen));
    ASSERT_EQ(dec.scores.size(), 1u);
    EXPECT_EQ(dec.scores[0].report.score3, cen.scores[0].report.score3);
}

TEST(Runner, identical_nodes_stay_in_consensus) {
    auto c = tiny_config();
    c.partition = data::PartitionStrategy::kReplicated;
    c.topology = dnet::TopologyKind::kComplete;
    c.init = InitMode::kIdentical;
    c.batch = 1000;
    c.budget = 3;
    RunOptions opts;
    opts.final_scores = false;
    opts.observer = [&](const RoundSnapshot& s) {
        for (const auto& t : s.after) EXPECT_LT(max_diff(t, s.after[0]), 1e-12);
    };
    auto r = run_decentralized(c, opts);
    for (const auto& log : r.rounds) EXPECT_LT(log.consensus_dist, 1e-12);
}

TEST(Runner, robust_clip_contains_attacker) {
    auto c = tiny_config();
    c.nodes[1].role = dnet::NodeRole::kGaussianAttacker;
    c.aggregation = dnet::AggregationRule::robust(0.05);
    c.attack_variance = dnet::VarianceEstimator::kPooled;
    RunOptions opts;
    opts.final_scores = false;
    opts.observer = [&](const RoundSnapshot& s) {
        EXPECT_TRUE(s.gradients[1].size() == 0);
        for (int i : {0, 2, 3}) {
            // Each clipped displacement moves node i by at most w_ij tau, and
            // the off-diagonal weights of a ring-4 row sum to 2/3.
            EXPECT_LE((s.after[i] - s.half_step[i]).norm(), 2.0 / 3 * 0.05 + 1e-12);
        }
    };
    auto r = run_decentralized(c, opts);
    for (const auto& log : r.rounds) {
        EXPECT_FALSE(log.nodes[1].loss.has_value());
        EXPECT_TRUE(log.nodes[0].loss.has_value());
    }
    EXPECT_TRUE(r.scores.empty());
}

TEST(Runner, local_mode_does_not_mix) {
    auto c = tiny_config();
    c.budget = 2;
    RunOptions opts;
    opts.final_scores = false;
    opts.observer = [&](const RoundSnapshot& s) {
        for (std::size_t i = 0; i < s.after.size(); ++i) EXPECT_EQ(s.after[i], s.half_step[i]);
    };
    run_local(c, opts);
}

TEST(Runner, reruns_are_bit_identical) {
    auto c = tiny_config();
    c.nodes[2].role = dnet::NodeRole::kGaussianAttacker;
    const auto a = jsonl(run_decentralized(c));
    EXPECT_EQ(a, jsonl(run_decentralized(c)));
    c.seed = 4;
    EXPECT_NE(a, jsonl(run_decentralized(c)));
}

TEST(Runner, gradient_threshold_stops_early) {
    auto c = tiny_config();
    c.grad_threshold = 1e6;
    auto r = run_decentralized(c);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.rounds_run, 1);
}

TEST(Runner, iteration_to_threshold) {
    RunResult r;
    r.evaluations = {{10, 0.5}, {20, 0.85}, {30, 0.95}, {40, 0.9}};
    EXPECT_EQ(iteration_to_threshold(r, "mean_accuracy", 0.9), 30);
    EXPECT_EQ(iteration_to_threshold(r, "mean_accuracy", 0.5), 10);
    EXPECT_FALSE(iteration_to_threshold(r, "mean_accuracy", 0.99).has_value());
    RoundLog log;
    log.round = 1;
    log.nodes = {{0, dnet::NodeRole::kHonest, -0.2, 0.2, 1.0, 1.0}, {1, dnet::NodeRole::kHonest, -0.4, 0.4, 1.0, 1.0}};
    r.rounds.push_back(log);
    log.round = 2;
    log.nodes[0].alignment = 0.6;
    r.rounds.push_back(log);
    EXPECT_EQ(iteration_to_threshold(r, "mean_alignment", 0.45), 2);
    EXPECT_THROW(iteration_to_threshold(r, "loss", 0.1), std::invalid_argument);
    EXPECT_EQ(to_string(parse_mode("centralized")), "centralized");
    EXPECT_THROW(parse_mode("federated"), std::invalid_argument);
}

TEST(Output, files_and_report) {
    auto c = tiny_config();
    c.write_gram = true;
    c.nodes[3].role = dnet::NodeRole::kSignFlipAttacker;
    auto r = run_decentralized(c);
    auto dir = std::filesystem::temp_directory_path() / "dqkl_output_test";
    std::filesystem::remove_all(dir);
    write_outputs(dir, r, c);
    std::ifstream rounds(dir / "rounds.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(rounds, line)) {
        auto j = nlohmann::json::parse(line);
        for (const char* key : {"round", "node", "role", "loss", "alignment", "grad_norm", "consensus_dist", "param_norm"}) {
            EXPECT_TRUE(j.contains(key)) << key;
        }
        if (j["node"] == 3) EXPECT_TRUE(j["loss"].is_null());
        ++lines;
    }
    EXPECT_EQ(lines, 16);
    std::ifstream scores_file(dir / "scores.json");
    std::stringstream text;
    text << scores_file.rdbuf();
    auto scores = nlohmann::json::parse(text.str());
    EXPECT_EQ(scores["seed"], 3);
    // Attackers hold no trained model and are left out of the scores.
    EXPECT_EQ(scores["nodes"].size(), 3u);
    EXPECT_TRUE(std::filesystem::exists(dir / "gram_final.csv"));
    EXPECT_NE(render_report(text.str()).find("decentralized"), std::string::npos);
    std::filesystem::remove_all(dir);
}

#ifdef DQKL_CLI_PATH
TEST(Cli, run_gen_data_and_report) {
    auto dir = std::filesystem::temp_directory_path() / "dqkl_cli_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream cfg(dir / "tiny.cfg");
        cfg << serialize_config(tiny_config());
    }
    const std::string cli = DQKL_CLI_PATH;
    const std::string d = dir.string();
    EXPECT_EQ(std::system((cli + " run " + d + "/tiny.cfg --out " + d + "/out --set train.budget=2 2>/dev/null").c_str()), 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "rounds.jsonl"));
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "scores.json"));
    EXPECT_EQ(std::system((cli + " gen-data --seed 2 --out " + d + "/pts.csv").c_str()), 0);
    EXPECT_EQ(std::system((cli + " report " + d + "/out > " + d + "/report.txt").c_str()), 0);
    EXPECT_NE(std::system((cli + " run --set no.such=1 --out " + d + "/bad 2>/dev/null").c_str()), 0);
    std::filesystem::remove_all(dir);
}
#endif
