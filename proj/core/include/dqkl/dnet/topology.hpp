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

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dqkl::dnet {

enum class TopologyKind { kRing, kComplete, kCustom };

std::string to_string(TopologyKind kind);

class DisconnectedTopologyError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Undirected graph over nodes 0..N-1. Self loops are never stored; the
/// neighborhood N_i used for mixing includes i itself.
class Topology {
   public:
    static Topology ring(int num_nodes);
    static Topology complete(int num_nodes);
    /// Throws std::out_of_range on a bad endpoint, std::invalid_argument on a self loop.
    static Topology custom(int num_nodes, const std::vector<std::pair<int, int>>& edges);

    int num_nodes() const { return num_nodes_; }
    TopologyKind kind() const { return kind_; }
    /// Edges as (low, high) pairs.
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int i, int j) const;
    int degree(int i) const;
    /// Adjacent nodes in ascending order, excluding i.
    std::vector<int> neighbors(int i) const;
    /// N_i: i and its neighbors, ascending.
    std::vector<int> neighborhood(int i) const;

    bool is_connected() const;
    /// Throws DisconnectedTopologyError when the graph is not connected.
    void require_connected() const;

   private:
    Topology(int num_nodes, TopologyKind kind) : num_nodes_(num_nodes), kind_(kind) {}
    void check_node(int i) const;

    int num_nodes_ = 0;
    TopologyKind kind_ = TopologyKind::kCustom;
    std::set<std::pair<int, int>> edges_;
};

using WeightMatrix = Eigen::MatrixXd;

/// w_ij = 1 / (1 + max(deg_i, deg_j)) on edges, w_ii takes the remainder.
WeightMatrix metropolis_weights(const Topology& topology);

/// Throws std::logic_error unless W is nonnegative, doubly stochastic within
/// 1e-12 and supported exactly on the edges plus the diagonal.
void check_weights(const WeightMatrix& w, const Topology& topology);

/// Largest |eigenvalue| of W - 1 1^T / N.
double spectral_gap(const WeightMatrix& w);

}  // namespace dqkl::dnet
