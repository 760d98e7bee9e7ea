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
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqkl/learn/dataset.hpp"

namespace dqkl::data {

/// grid x grid cells over the unit square with Gaussian clusters at the cell
/// centers. Cell (r, c) spans x1 in [c/grid, (c+1)/grid) and x2 in
/// [r/grid, (r+1)/grid); its label is +1 when r + c is even.
struct CheckerboardSpec {
    int grid = 4;
    int points_per_cell = 10;
    double sigma = 0.04;
    std::uint64_t seed = 0;

    void validate() const;
    int num_cells() const { return grid * grid; }
};

/// Points ordered by cell (row-major over r, then c), then by draw.
/// Draws outside [0, 1]^2 are rejected and redrawn.
learn::LabeledDataset gen_checkerboard(const CheckerboardSpec& spec);

/// Cell label of the checkerboard pattern.
int checkerboard_label(int row, int col);

class CsvError : public std::runtime_error {
   public:
    CsvError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

   private:
    std::size_t line_;
};

/// Rows "x1,x2,label" with an optional "x1,x2,label" header. Blank lines are
/// skipped. Errors carry the 1-based line number.
learn::LabeledDataset read_csv(std::istream& in);
learn::LabeledDataset load_csv(const std::filesystem::path& path);

/// Writes a header and one row per point, with round-trip precision.
void write_csv(std::ostream& out, const learn::LabeledDataset& data);
void write_csv(const std::filesystem::path& path, const learn::LabeledDataset& data);

enum class PartitionStrategy {
    kRegion,      ///< contiguous column-major blocks of checkerboard cells
    kRandom,      ///< seeded shuffle dealt round-robin
    kReplicated,  ///< every node holds the whole dataset
};

std::string to_string(PartitionStrategy strategy);

struct PartitionPlan {
    PartitionStrategy strategy = PartitionStrategy::kRegion;
    int num_nodes = 4;
    std::uint64_t seed = 0;
    /// Cells per side, used by kRegion to locate points.
    int grid = 4;
};

/// Per-node index lists into `data`, each ascending. Every node receives
/// both labels; kRandom redraws the shuffle until that holds, kRegion throws.
std::vector<std::vector<std::size_t>> partition_indices(const learn::LabeledDataset& data,
                                                        const PartitionPlan& plan);

std::vector<learn::LabeledDataset> partition(const learn::LabeledDataset& data,
                                             const PartitionPlan& plan);

struct Split {
    learn::LabeledDataset train;
    learn::LabeledDataset test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

/// Stratified split: round(test_fraction * count) points of each label go to
/// the test side. Both sides keep the input order.
Split train_test_split(const learn::LabeledDataset& data, double test_fraction,
                       std::uint64_t seed);

}  // namespace dqkl::data
