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


#include "dqkl/dnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Eigenvalues>

namespace dqkl::dnet {

namespace {

constexpr double kStochasticTolerance = 1e-12;

void check_size(int num_nodes) {
    if (num_nodes < 1) throw std::invalid_argument("a topology needs at least one node");
}

}  // namespace

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::kRing:
            return "ring";
        case TopologyKind::kComplete:
            return "complete";
        case TopologyKind::kCustom:
            return "custom";
    }
    return "unknown";
}

Topology Topology::ring(int num_nodes) {
    check_size(num_nodes);
    Topology t(num_nodes, TopologyKind::kRing);
    if (num_nodes == 2) t.edges_.insert({0, 1});
    if (num_nodes >= 3) {
        for (int i = 0; i < num_nodes; ++i) {
            const int j = (i + 1) % num_nodes;
            t.edges_.insert({std::min(i, j), std::max(i, j)});
        }
    }
    return t;
}

Topology Topology::complete(int num_nodes) {
    check_size(num_nodes);
    Topology t(num_nodes, TopologyKind::kComplete);
    for (int i = 0; i < num_nodes; ++i) {
        for (int j = i + 1; j < num_nodes; ++j) t.edges_.insert({i, j});
    }
    return t;
}

Topology Topology::custom(int num_nodes, const std::vector<std::pair<int, int>>& edges) {
    check_size(num_nodes);
    Topology t(num_nodes, TopologyKind::kCustom);
    for (const auto& [a, b] : edges) {
        t.check_node(a);
        t.check_node(b);
        if (a == b) throw std::invalid_argument("self loop at node " + std::to_string(a));
        t.edges_.insert({std::min(a, b), std::max(a, b)});
    }
    return t;
}

void Topology::check_node(int i) const {
    if (i < 0 || i >= num_nodes_) {
        throw std::out_of_range("node " + std::to_string(i) + " outside a " +
                                std::to_string(num_nodes_) + "-node topology");
    }
}

bool Topology::has_edge(int i, int j) const {
    check_node(i);
    check_node(j);
    return edges_.contains({std::min(i, j), std::max(i, j)});
}

int Topology::degree(int i) const { return static_cast<int>(neighbors(i).size()); }

std::vector<int> Topology::neighbors(int i) const {
    check_node(i);
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == i) out.push_back(b);
        if (b == i) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Topology::neighborhood(int i) const {
    auto out = neighbors(i);
    out.insert(std::lower_bound(out.begin(), out.end(), i), i);
    return out;
}

bool Topology::is_connected() const {
    std::vector<bool> seen(static_cast<std::size_t>(num_nodes_), false);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        const int i = frontier.front();
        frontier.pop();
        for (int j : neighbors(i)) {
            if (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                ++reached;
                frontier.push(j);
            }
        }
    }
    return reached == num_nodes_;
}

void Topology::require_connected() const {
    if (!is_connected()) throw DisconnectedTopologyError("topology is not connected");
}

WeightMatrix metropolis_weights(const Topology& topology) {
    topology.require_connected();
    const int n = topology.num_nodes();
    WeightMatrix w = WeightMatrix::Zero(n, n);
    for (const auto& [a, b] : topology.edges()) {
        const double v = 1.0 / (1.0 + std::max(topology.degree(a), topology.degree(b)));
        w(a, b) = v;
        w(b, a) = v;
    }
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j != i) off += w(i, j);
        }
        w(i, i) = 1.0 - off;
    }
    check_weights(w, topology);
    return w;
}

void check_weights(const WeightMatrix& w, const Topology& topology) {
    const int n = topology.num_nodes();
    if (w.rows() != n || w.cols() != n) throw std::logic_error("weight matrix has the wrong shape");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const bool allowed = i == j || topology.has_edge(i, j);
            if (w(i, j) < 0.0) throw std::logic_error("negative mixing weight");
            if (allowed != (w(i, j) > 0.0)) {
                throw std::logic_error("mixing weight support differs from the topology at (" +
                                       std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
    const double row_error = (w.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double col_error = (w.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (row_error > kStochasticTolerance || col_error > kStochasticTolerance) {
        throw std::logic_error("mixing matrix is not doubly stochastic");
    }
}

double spectral_gap(const WeightMatrix& w) {
    if (w.rows() != w.cols() || w.rows() == 0) throw std::invalid_argument("W must be square");
    const auto n = static_cast<double>(w.rows());
    const Eigen::MatrixXd deflated = w - Eigen::MatrixXd::Constant(w.rows(), w.cols(), 1.0 / n);
    if ((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(deflated,
                                                                    Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(deflated, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace dqkl::dnet
