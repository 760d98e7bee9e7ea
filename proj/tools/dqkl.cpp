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


// dqkl command-line interface: run experiments, generate data, print reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqkl/data/data.hpp"
#include "dqkl/runner/config.hpp"
#include "dqkl/runner/experiment.hpp"
#include "dqkl/runner/output.hpp"

namespace fs = std::filesystem;
using namespace dqkl;

namespace {

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, const std::string& mode,
            const std::vector<std::string>& overrides) {
    auto config = runner::load_config(config_path);
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw runner::ConfigError("--set expects key=value, got " + kv);
        runner::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) config.seed = *seed;
    config.validate();

    const auto run_mode = runner::parse_mode(mode);
    runner::RunOptions options;
    const long every = std::max(1L, config.budget / 20);
    options.observer = [&](const runner::RoundSnapshot& s) {
        if (s.round % every == 0) std::cerr << "round " << s.round << "/" << config.budget << "\n";
    };
    const auto result = runner::run(config, run_mode, options);
    runner::write_outputs(out_dir, result, config);
    std::cout << runner::render_report(runner::scores_json(result, config));
    std::cerr << "wrote " << (fs::path(out_dir) / "rounds.jsonl").string() << " and scores.json\n";
    return 0;
}

int cmd_gen_data(const std::string& out, std::uint64_t seed, int points_per_cell, double sigma) {
    data::CheckerboardSpec spec;
    spec.seed = seed;
    spec.points_per_cell = points_per_cell;
    spec.sigma = sigma;
    const auto dataset = data::gen_checkerboard(spec);
    if (out == "-") {
        data::write_csv(std::cout, dataset);
    } else {
        data::write_csv(fs::path(out), dataset);
        std::cerr << "wrote " << dataset.size() << " points to " << out << "\n";
    }
    return 0;
}

int cmd_report(const std::string& path) {
    fs::path file = path;
    if (fs::is_directory(file)) file /= "scores.json";
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::cout << runner::render_report(buffer.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized quantum kernel learning experiments"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string mode = "decentralized";
    std::vector<std::string> overrides;
    run->add_option("-c,--config,config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--mode", mode, "decentralized, centralized or local")
        ->check(CLI::IsMember({"decentralized", "centralized", "local"}))
        ->capture_default_str();
    run->add_option("--set", overrides, "Override a config entry, key=value");

    auto* gen = app.add_subcommand("gen-data", "Write a checkerboard dataset as CSV");
    std::string gen_out = "-";
    std::uint64_t gen_seed = 0;
    int per_cell = 10;
    double sigma = 0.04;
    gen->add_option("--out", gen_out, "CSV path, - for stdout")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Data seed")->capture_default_str();
    gen->add_option("--points-per-cell", per_cell, "Points per checkerboard cell")->capture_default_str();
    gen->add_option("--sigma", sigma, "Cluster standard deviation")->capture_default_str();

    auto* report = app.add_subcommand("report", "Print the score table of a finished run");
    std::string report_path;
    report->add_option("path", report_path, "Run directory or scores.json")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return cmd_run(config_path, seed, out_dir, mode, overrides);
        if (*gen) return cmd_gen_data(gen_out, gen_seed, per_cell, sigma);
        if (*report) return cmd_report(report_path);
    } catch (const std::exception& e) {
        std::cerr << "dqkl: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
