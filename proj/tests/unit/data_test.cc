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
#include <filesystem>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"

#include "dqkl/data/data.hpp"

using namespace dqkl;
using namespace dqkl::data;

namespace {

learn::LabeledDataset board(std::uint64_t seed, double sigma = 0.04) {
    CheckerboardSpec spec;
    spec.seed = seed;
    spec.sigma = sigma;
    return gen_checkerboard(spec);
}

}  // namespace

TEST(Checkerboard, balanced_and_in_range) {
    auto d = board(1);
    ASSERT_EQ(d.size(), 160u);
    EXPECT_EQ(d.count(1), 80u);
    EXPECT_EQ(d.count(-1), 80u);
    for (const auto& s : d) {
        ASSERT_EQ(s.x.size(), 2u);
        EXPECT_GE(s.x[0], 0.0);
        EXPECT_LE(s.x[0], 1.0);
        EXPECT_GE(s.x[1], 0.0);
        EXPECT_LE(s.x[1], 1.0);
    }
}

TEST(Checkerboard, labels_follow_cells) {
    auto d = board(2, 1e-9);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const int cell = static_cast<int>(i / 10);
        const int r = cell / 4, c = cell % 4;
        EXPECT_NEAR(d[i].x[0], (c + 0.5) / 4, 1e-7);
        EXPECT_NEAR(d[i].x[1], (r + 0.5) / 4, 1e-7);
        EXPECT_EQ(d[i].label, (r + c) % 2 == 0 ? 1 : -1);
        EXPECT_EQ(d[i].label, checkerboard_label(r, c));
    }
}

TEST(Checkerboard, deterministic) {
    EXPECT_EQ(board(5), board(5));
    EXPECT_NE(board(5), board(6));
}

TEST(Checkerboard, rejects_bad_spec) {
    CheckerboardSpec spec;
    spec.grid = 0;
    EXPECT_THROW(gen_checkerboard(spec), std::invalid_argument);
    spec = {};
    spec.sigma = -1;
    EXPECT_THROW(gen_checkerboard(spec), std::invalid_argument);
    spec = {};
    spec.points_per_cell = 0;
    EXPECT_THROW(gen_checkerboard(spec), std::invalid_argument);
}

TEST(Csv, parse_example) {
    std::istringstream in("0.1,0.2,1\n0.3,0.4,-1");
    auto d = read_csv(in);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].x, (std::vector<double>{0.1, 0.2}));
    EXPECT_EQ(d[1].label, -1);
}

TEST(Csv, header_and_blank_lines) {
    std::istringstream in("x1,x2,label\n\n0.5,0.25,1\n");
    auto d = read_csv(in);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].x[1], 0.25);
}

TEST(Csv, errors_carry_line_numbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_csv(in);
        } catch (const CsvError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("0.1,0.2,0"), 1u);
    EXPECT_EQ(line_of("0.1,0.2,1\n0.1,abc,1"), 2u);
    EXPECT_EQ(line_of("x1,x2,label\n0.1,0.2"), 2u);
    EXPECT_EQ(line_of("0.1,0.2,1\n0.1,0.2,1,4"), 2u);
    std::istringstream empty("");
    EXPECT_THROW(read_csv(empty), CsvError);
    std::istringstream header_only("x1,x2,label\n");
    EXPECT_THROW(read_csv(header_only), CsvError);
}

TEST(Csv, round_trip) {
    auto d = board(9);
    std::stringstream buf;
    write_csv(buf, d);
    EXPECT_EQ(read_csv(buf), d);

    auto path = std::filesystem::temp_directory_path() / "dqkl_csv_round_trip.csv";
    write_csv(path, d);
    EXPECT_EQ(load_csv(path), d);
    std::filesystem::remove(path);
    EXPECT_THROW(load_csv(path), std::runtime_error);
}

TEST(Partition, region_column_strips) {
    auto d = board(3);
    auto parts = partition_indices(d, {PartitionStrategy::kRegion, 4, 0, 4});
    ASSERT_EQ(parts.size(), 4u);
    std::vector<int> owner(d.size(), -1);
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(parts[k].size(), 40u);
        EXPECT_TRUE(std::is_sorted(parts[k].begin(), parts[k].end()));
        for (auto i : parts[k]) owner[i] = k;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        // Column c of the grid covers x1 in [c/4, (c+1)/4).
        const int col = static_cast<int>((i / 10) % 4);
        EXPECT_EQ(owner[i], col) << i;
    }
    for (const auto& node : partition(d, {PartitionStrategy::kRegion, 4, 0, 4})) {
        EXPECT_EQ(node.count(1), 20u);
        EXPECT_EQ(node.count(-1), 20u);
    }
}

TEST(Partition, single_node_and_replicated) {
    auto d = board(4);
    auto one = partition(d, {PartitionStrategy::kRegion, 1, 0, 4});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], d);
    auto copies = partition(d, {PartitionStrategy::kReplicated, 3, 0, 4});
    ASSERT_EQ(copies.size(), 3u);
    for (const auto& c : copies) EXPECT_EQ(c, d);
}

TEST(Partition, random_round_robin) {
    auto d = board(5);
    auto parts = partition_indices(d, {PartitionStrategy::kRandom, 4, 11, 4});
    std::vector<std::size_t> all;
    for (const auto& p : parts) {
        EXPECT_EQ(p.size(), 40u);
        all.insert(all.end(), p.begin(), p.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expected(d.size());
    std::iota(expected.begin(), expected.end(), 0);
    EXPECT_EQ(all, expected);
    EXPECT_EQ(parts, partition_indices(d, {PartitionStrategy::kRandom, 4, 11, 4}));
    EXPECT_NE(parts, partition_indices(d, {PartitionStrategy::kRandom, 4, 12, 4}));
}

TEST(Partition, errors) {
    auto d = board(6);
    EXPECT_THROW(partition(d, {PartitionStrategy::kRegion, 3, 0, 4}), std::invalid_argument);
    EXPECT_THROW(partition(d, {PartitionStrategy::kRegion, 0, 0, 4}), std::invalid_argument);
    // Sixteen single-cell regions each hold one label only.
    EXPECT_THROW(partition(d, {PartitionStrategy::kRegion, 16, 0, 4}), std::invalid_argument);
}

TEST(Split, stratified_counts) {
    auto d = board(7);
    auto s = train_test_split(d, 0.25, 3);
    EXPECT_EQ(s.train.size(), 120u);
    EXPECT_EQ(s.test.size(), 40u);
    EXPECT_EQ(s.test.count(1), 20u);
    EXPECT_EQ(s.test.count(-1), 20u);
    std::vector<std::size_t> all = s.train_indices;
    all.insert(all.end(), s.test_indices.begin(), s.test_indices.end());
    std::sort(all.begin(), all.end());
    EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
    EXPECT_EQ(all.size(), d.size());
    EXPECT_TRUE(std::is_sorted(s.test_indices.begin(), s.test_indices.end()));
    for (std::size_t k = 0; k < s.test.size(); ++k) EXPECT_EQ(s.test[k], d[s.test_indices[k]]);
}

TEST(Split, seeded) {
    auto d = board(8);
    EXPECT_EQ(train_test_split(d, 0.25, 3).test_indices, train_test_split(d, 0.25, 3).test_indices);
    EXPECT_NE(train_test_split(d, 0.25, 3).test_indices, train_test_split(d, 0.25, 4).test_indices);
}

TEST(Split, degenerate) {
    auto d = board(9);
    EXPECT_THROW(train_test_split(d, 0.0, 1), std::invalid_argument);
    EXPECT_THROW(train_test_split(d, 1.0, 1), std::invalid_argument);
    learn::LabeledDataset two({{{0.1, 0.1}, 1}, {{0.9, 0.9}, -1}});
    EXPECT_THROW(train_test_split(two, 0.25, 1), std::invalid_argument);
}
