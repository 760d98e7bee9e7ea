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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dqkl/runner/config.hpp"
#include "dqkl/runner/experiment.hpp"

namespace dqkl::runner {

/// One JSON object per node per round: round, node, role, loss, alignment,
/// grad_norm, consensus_dist, param_norm. Attackers carry nulls for the
/// training metrics. Timing is left out so reruns are byte-identical.
void write_rounds_jsonl(std::ostream& out, const RunResult& result);

/// Scores, evaluation history, threshold crossing, config echo and seed.
std::string scores_json(const RunResult& result, const ExperimentConfig& config);

void write_gram_csv(std::ostream& out, const learn::GramMatrix& k);

/// Writes rounds.jsonl, scores.json and, when present, gram_final.csv into `dir`.
void write_outputs(const std::filesystem::path& dir, const RunResult& result,
                   const ExperimentConfig& config);

/// Plain-text score table from a scores.json document.
std::string render_report(const std::string& scores_json_text);

}  // namespace dqkl::runner
