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

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dqkl::learn {

struct Sample {
    std::vector<double> x;
    int label = 1;  ///< -1 or +1

    bool operator==(const Sample&) const = default;
};

/// Ordered (x, y) pairs with y in {-1, +1} and a common feature dimension.
class LabeledDataset {
   public:
    LabeledDataset() = default;
    /// Throws std::invalid_argument on a label outside {-1, +1} or ragged features.
    explicit LabeledDataset(std::vector<Sample> samples);

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    std::size_t feature_dim() const { return samples_.empty() ? 0 : samples_.front().x.size(); }

    const Sample& operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<Sample>& samples() const { return samples_; }
    auto begin() const { return samples_.begin(); }
    auto end() const { return samples_.end(); }

    Eigen::VectorXd labels() const;
    std::size_t count(int label) const;

    LabeledDataset subset(std::span<const std::size_t> indices) const;
    /// Concatenation; both sides must share the feature dimension.
    LabeledDataset concat(const LabeledDataset& other) const;

    bool operator==(const LabeledDataset&) const = default;

   private:
    std::vector<Sample> samples_;
};

}  // namespace dqkl::learn
