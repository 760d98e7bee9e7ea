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

#include "dqkl/learn/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dqkl::learn {

LabeledDataset::LabeledDataset(std::vector<Sample> samples) : samples_(std::move(samples)) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (s.label != 1 && s.label != -1) {
            throw std::invalid_argument("sample " + std::to_string(i) + " has label " +
                                        std::to_string(s.label) + "; labels must be -1 or +1");
        }
        if (s.x.size() != samples_.front().x.size()) {
            throw std::invalid_argument("sample " + std::to_string(i) +
                                        " has a different feature dimension");
        }
    }
}

Eigen::VectorXd LabeledDataset::labels() const {
    Eigen::VectorXd y(static_cast<Eigen::Index>(samples_.size()));
    for (std::size_t i = 0; i < samples_.size(); ++i) y[static_cast<Eigen::Index>(i)] = samples_[i].label;
    return y;
}

std::size_t LabeledDataset::count(int label) const {
    return static_cast<std::size_t>(std::count_if(
        samples_.begin(), samples_.end(), [label](const Sample& s) { return s.label == label; }));
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
    std::vector<Sample> picked;
    picked.reserve(indices.size());
    for (std::size_t i : indices) picked.push_back(samples_.at(i));
    return LabeledDataset(std::move(picked));
}

LabeledDataset LabeledDataset::concat(const LabeledDataset& other) const {
    if (!empty() && !other.empty() && feature_dim() != other.feature_dim()) {
        throw std::invalid_argument("cannot concatenate datasets with different feature dimensions");
    }
    std::vector<Sample> all = samples_;
    all.insert(all.end(), other.samples_.begin(), other.samples_.end());
    return LabeledDataset(std::move(all));
}

}  // namespace dqkl::learn
