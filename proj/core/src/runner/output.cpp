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


#include "dqkl/runner/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace dqkl::runner {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * v);
    return buf;
}

}  // namespace

void write_rounds_jsonl(std::ostream& out, const RunResult& result) {
    for (const auto& r : result.rounds) {
        for (const auto& rec : r.nodes) {
            json line = {{"round", r.round},
                         {"node", rec.node},
                         {"role", dnet::to_string(rec.role)},
                         {"loss", optional_number(rec.loss)},
                         {"alignment", optional_number(rec.alignment)},
                         {"grad_norm", optional_number(rec.grad_norm)},
                         {"consensus_dist", r.consensus_dist},
                         {"param_norm", rec.param_norm}};
            out << line.dump() << '\n';
        }
    }
}

std::string scores_json(const RunResult& result, const ExperimentConfig& config) {
    json doc;
    doc["mode"] = to_string(result.mode);
    doc["seed"] = config.seed;
    doc["rounds_run"] = result.rounds_run;
    doc["converged"] = result.converged;
    doc["iteration_to_threshold"] = {
        {"metric", "mean_accuracy"},
        {"threshold", config.accuracy_threshold},
        {"eval_every", config.eval_every},
        {"round", result.rounds_to_threshold ? json(*result.rounds_to_threshold) : json(nullptr)}};
    json nodes = json::array();
    for (const auto& s : result.scores) {
        nodes.push_back({{"node", s.node},
                         {"role", dnet::to_string(s.role)},
                         {"score1", s.report.score1},
                         {"score2", s.report.score2},
                         {"score3", s.report.score3},
                         {"alignment", s.report.alignment},
                         {"iterations", s.report.iterations}});
    }
    doc["nodes"] = nodes;
    if (!result.scores.empty()) {
        const auto avg = honest_average(result.scores);
        doc["honest_average"] = {{"score1", avg.score1},
                                 {"score2", avg.score2},
                                 {"score3", avg.score3},
                                 {"alignment", avg.alignment}};
    }
    json history = json::array();
    for (const auto& e : result.evaluations) {
        history.push_back({{"round", e.round}, {"accuracy", e.accuracy}});
    }
    doc["evaluations"] = history;
    doc["config"] = config.to_key_values();
    return doc.dump(2);
}

void write_gram_csv(std::ostream& out, const learn::GramMatrix& k) {
    const Eigen::IOFormat csv(Eigen::FullPrecision, Eigen::DontAlignCols, ",", "\n", "", "", "", "\n");
    out << k.format(csv);
}

void write_outputs(const std::filesystem::path& dir, const RunResult& result,
                   const ExperimentConfig& config) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_out(dir / "rounds.jsonl");
        write_rounds_jsonl(out, result);
    }
    {
        auto out = open_out(dir / "scores.json");
        out << scores_json(result, config) << '\n';
    }
    if (result.final_gram) {
        auto out = open_out(dir / "gram_final.csv");
        write_gram_csv(out, *result.final_gram);
    }
}

std::string render_report(const std::string& scores_json_text) {
    const json doc = json::parse(scores_json_text);
    std::ostringstream out;
    out << "mode " << doc.at("mode").get<std::string>() << ", seed " << doc.at("seed") << ", "
        << doc.at("rounds_run") << " rounds\n";
    out << "node  role        Score1   Score2   Score3   alignment\n";
    for (const auto& n : doc.at("nodes")) {
        char line[128];
        std::snprintf(line, sizeof line, "%-5d %-10s %s  %s  %s  %9.5f\n", n.at("node").get<int>(),
                      n.at("role").get<std::string>().c_str(),
                      percent(n.at("score1").get<double>()).c_str(),
                      percent(n.at("score2").get<double>()).c_str(),
                      percent(n.at("score3").get<double>()).c_str(),
                      n.at("alignment").get<double>());
        out << line;
    }
    if (doc.contains("honest_average")) {
        const auto& a = doc.at("honest_average");
        out << "avg   honest     " << percent(a.at("score1").get<double>()) << "  "
            << percent(a.at("score2").get<double>()) << "  "
            << percent(a.at("score3").get<double>()) << '\n';
    }
    const auto& it = doc.at("iteration_to_threshold");
    out << "rounds to " << it.at("metric").get<std::string>() << " >= " << it.at("threshold")
        << ": ";
    if (it.at("round").is_null()) {
        out << "not reached\n";
    } else {
        out << it.at("round") << '\n';
    }
    return out.str();
}

}  // namespace dqkl::runner
