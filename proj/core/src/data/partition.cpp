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
#include <cmath>
#include <numeric>

#include "dqkl/data/data.hpp"
#include "dqkl/util/random.hpp"

namespace dqkl::data {

namespace {

constexpr int kMaxRedraws = 1000;

bool has_both_labels(const learn::LabeledDataset& data, const std::vector<std::size_t>& idx) {
    bool pos = false;
    bool neg = false;
    for (std::size_t i : idx) (data[i].label > 0 ? pos : neg) = true;
    return pos && neg;
}

bool all_have_both_labels(const learn::LabeledDataset& data,
                          const std::vector<std::vector<std::size_t>>& parts) {
    return std::all_of(parts.begin(), parts.end(),
                       [&](const auto& p) { return has_both_labels(data, p); });
}

int cell_coord(double v, int grid) { return std::clamp(static_cast<int>(std::floor(v * grid)), 0, grid - 1); }

std::vector<std::vector<std::size_t>> region_parts(const learn::LabeledDataset& data,
                                                   const PartitionPlan& plan) {
    if (data.feature_dim() != 2) throw std::invalid_argument("region partition needs 2 features");
    const int cells = plan.grid * plan.grid;
    if (cells % plan.num_nodes != 0) {
        throw std::invalid_argument("region partition needs the node count (" +
                                    std::to_string(plan.num_nodes) + ") to divide the " +
                                    std::to_string(cells) + " cells");
    }
    const int per_node = cells / plan.num_nodes;
    std::vector<std::vector<std::size_t>> parts(static_cast<std::size_t>(plan.num_nodes));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int col = cell_coord(data[i].x[0], plan.grid);
        const int row = cell_coord(data[i].x[1], plan.grid);
        // Column-major cell order, so blocks are vertical strips first.
        const int cell = col * plan.grid + row;
        parts[static_cast<std::size_t>(cell / per_node)].push_back(i);
    }
    return parts;
}

}  // namespace

std::string to_string(PartitionStrategy strategy) {
    switch (strategy) {
        case PartitionStrategy::kRegion:
            return "region";
        case PartitionStrategy::kRandom:
            return "random";
        case PartitionStrategy::kReplicated:
            return "replicated";
    }
    return "unknown";
}

std::vector<std::vector<std::size_t>> partition_indices(const learn::LabeledDataset& data,
                                                        const PartitionPlan& plan) {
    if (plan.num_nodes < 1) throw std::invalid_argument("partition needs at least one node");
    if (static_cast<std::size_t>(plan.num_nodes) > data.size()) {
        throw std::invalid_argument("more nodes than data points");
    }
    if (plan.grid < 1) throw std::invalid_argument("partition grid must be positive");
    const auto n = static_cast<std::size_t>(plan.num_nodes);
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});

    if (plan.num_nodes == 1 || plan.strategy == PartitionStrategy::kReplicated) {
        return std::vector<std::vector<std::size_t>>(n, all);
    }
    if (plan.strategy == PartitionStrategy::kRegion) {
        auto parts = region_parts(data, plan);
        if (!all_have_both_labels(data, parts)) {
            throw std::invalid_argument("region partition leaves a node with a single label");
        }
        return parts;
    }
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        auto rng = make_stream(plan.seed, StreamTag::kPartition, {static_cast<std::uint64_t>(attempt)});
        auto order = all;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::vector<std::size_t>> parts(n);
        for (std::size_t k = 0; k < order.size(); ++k) parts[k % n].push_back(order[k]);
        for (auto& p : parts) std::sort(p.begin(), p.end());
        if (all_have_both_labels(data, parts)) return parts;
    }
    throw std::invalid_argument("random partition could not give every node both labels");
}

std::vector<learn::LabeledDataset> partition(const learn::LabeledDataset& data,
                                             const PartitionPlan& plan) {
    std::vector<learn::LabeledDataset> out;
    for (const auto& idx : partition_indices(data, plan)) out.push_back(data.subset(idx));
    return out;
}

Split train_test_split(const learn::LabeledDataset& data, double test_fraction,
                       std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("test fraction must lie strictly between 0 and 1");
    }
    std::vector<std::size_t> test;
    for (int label : {1, -1}) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data[i].label == label) members.push_back(i);
        }
        auto rng = make_stream(seed, StreamTag::kSplit, {label > 0 ? 1u : 0u});
        std::shuffle(members.begin(), members.end(), rng);
        const auto take = static_cast<std::size_t>(
            std::lround(test_fraction * static_cast<double>(members.size())));
        test.insert(test.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::sort(test.begin(), test.end());
    Split out;
    out.test_indices = test;
    for (std::size_t i = 0, k = 0; i < data.size(); ++i) {
        if (k < test.size() && test[k] == i) {
            ++k;
        } else {
            out.train_indices.push_back(i);
        }
    }
    if (out.train_indices.empty() || out.test_indices.empty()) {
        throw std::invalid_argument("split leaves an empty train or test side");
    }
    out.train = data.subset(out.train_indices);
    out.test = data.subset(out.test_indices);
    return out;
}

}  // namespace dqkl::data
