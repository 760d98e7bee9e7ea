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


#include <random>

#include "dqkl/data/data.hpp"
#include "dqkl/util/random.hpp"

namespace dqkl::data {

void CheckerboardSpec::validate() const {
    if (grid < 1) throw std::invalid_argument("checkerboard grid must be positive");
    if (points_per_cell < 1) throw std::invalid_argument("points per cell must be positive");
    if (!(sigma > 0.0)) throw std::invalid_argument("checkerboard sigma must be positive");
}

int checkerboard_label(int row, int col) { return (row + col) % 2 == 0 ? 1 : -1; }

learn::LabeledDataset gen_checkerboard(const CheckerboardSpec& spec) {
    spec.validate();
    const double side = 1.0 / spec.grid;
    std::vector<learn::Sample> samples;
    samples.reserve(static_cast<std::size_t>(spec.num_cells() * spec.points_per_cell));
    for (int r = 0; r < spec.grid; ++r) {
        for (int c = 0; c < spec.grid; ++c) {
            auto rng = make_stream(spec.seed, StreamTag::kData,
                                   {static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c)});
            std::normal_distribution<double> dx((c + 0.5) * side, spec.sigma);
            std::normal_distribution<double> dy((r + 0.5) * side, spec.sigma);
            for (int k = 0; k < spec.points_per_cell; ++k) {
                double x1 = 0.0;
                double x2 = 0.0;
                do {
                    x1 = dx(rng);
                    x2 = dy(rng);
                } while (x1 < 0.0 || x1 > 1.0 || x2 < 0.0 || x2 > 1.0);
                samples.push_back({{x1, x2}, checkerboard_label(r, c)});
            }
        }
    }
    return learn::LabeledDataset(std::move(samples));
}

}  // namespace dqkl::data
