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


#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "dqkl/dnet/aggregation.hpp"
#include "dqkl/dnet/attacks.hpp"
#include "dqkl/dnet/topology.hpp"

using namespace dqkl;
using namespace dqkl::dnet;
using Eigen::VectorXd;

namespace {

Messages messages_from(const std::vector<VectorXd>& thetas, const std::vector<int>& ids) {
    Messages m;
    for (int j : ids) m[j] = thetas[static_cast<std::size_t>(j)];
    return m;
}

// One aggregation-only round: every node mixes over its neighborhood.
std::vector<VectorXd> mix_round(const std::vector<VectorXd>& thetas, const Topology& topo,
                                const WeightMatrix& w) {
    std::vector<VectorXd> next;
    for (int i = 0; i < topo.num_nodes(); ++i) {
        next.push_back(aggregate_plain(messages_from(thetas, topo.neighborhood(i)), w.row(i).transpose()));
    }
    return next;
}

std::vector<VectorXd> random_thetas(int n, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<VectorXd> out;
    for (int i = 0; i < n; ++i) {
        VectorXd v(dim);
        for (auto& x : v) x = z(rng);
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST(Topology, ring_and_complete) {
    auto ring = Topology::ring(4);
    EXPECT_EQ(ring.edges().size(), 4u);
    EXPECT_EQ(ring.neighbors(0), (std::vector<int>{1, 3}));
    EXPECT_EQ(ring.neighborhood(2), (std::vector<int>{1, 2, 3}));
    EXPECT_TRUE(ring.has_edge(3, 0));
    EXPECT_FALSE(ring.has_edge(0, 2));
    EXPECT_EQ(Topology::ring(2).edges().size(), 1u);
    EXPECT_TRUE(Topology::ring(1).edges().empty());
    auto full = Topology::complete(5);
    EXPECT_EQ(full.edges().size(), 10u);
    EXPECT_EQ(full.degree(3), 4);
}

TEST(Topology, custom_and_connectivity) {
    auto path = Topology::custom(3, {{0, 1}, {2, 1}});
    EXPECT_TRUE(path.is_connected());
    EXPECT_TRUE(path.has_edge(1, 2));
    auto split = Topology::custom(4, {{0, 1}, {2, 3}});
    EXPECT_FALSE(split.is_connected());
    EXPECT_THROW(split.require_connected(), DisconnectedTopologyError);
    EXPECT_THROW(metropolis_weights(split), DisconnectedTopologyError);
    EXPECT_THROW(Topology::custom(3, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(Topology::custom(3, {{0, 3}}), std::out_of_range);
}

TEST(Metropolis, examples) {
    auto w3 = metropolis_weights(Topology::ring(3));
    EXPECT_LT((w3.array() - 1.0 / 3).abs().maxCoeff(), 1e-15);

    auto w4 = metropolis_weights(Topology::ring(4));
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(w4(i, i), 1.0 / 3, 1e-15);
        EXPECT_NEAR(w4(i, (i + 1) % 4), 1.0 / 3, 1e-15);
        EXPECT_EQ(w4(i, (i + 2) % 4), 0.0);
    }

    auto w5 = metropolis_weights(Topology::complete(5));
    EXPECT_LT((w5.array() - 0.2).abs().maxCoeff(), 1e-15);
}

TEST(Metropolis, irregular_graph_is_doubly_stochastic) {
    auto topo = Topology::custom(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
    auto w = metropolis_weights(topo);
    EXPECT_NO_THROW(check_weights(w, topo));
    EXPECT_NEAR(w(0, 1), 0.25, 1e-15);
    EXPECT_NEAR(w(3, 4), 1.0 / 3, 1e-15);
    EXPECT_LT((w - w.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    WeightMatrix bad = w;
    bad(1, 4) = 0.01;
    EXPECT_THROW(check_weights(bad, topo), std::logic_error);
}

TEST(SpectralGap, examples) {
    EXPECT_NEAR(spectral_gap(metropolis_weights(Topology::complete(5))), 0.0, 1e-12);
    EXPECT_NEAR(spectral_gap(metropolis_weights(Topology::ring(4))), 1.0 / 3, 1e-12);
    EXPECT_LT(spectral_gap(metropolis_weights(Topology::ring(9))), 1.0);
}

TEST(Aggregation, plain_examples) {
    VectorXd v(3);
    v << 1, -2, 0.5;
    Messages same{{0, v}, {1, v}, {2, v}};
    EXPECT_LT((aggregate_plain(same, Eigen::Vector3d(0.2, 0.3, 0.5)) - v).cwiseAbs().maxCoeff(), 1e-15);
    Messages pair{{0, VectorXd::Zero(3)}, {1, 2 * v}};
    EXPECT_EQ(aggregate_plain(pair, Eigen::Vector2d(0.5, 0.5)), v);
    Messages missing{{0, v}};
    EXPECT_THROW(aggregate_plain(missing, Eigen::Vector2d(0.5, 0.5)), MissingMessageError);
}

TEST(Aggregation, order_independent) {
    auto thetas = random_thetas(3, 4, 1);
    Eigen::Vector3d w(0.5, 0.25, 0.25);
    Messages a = messages_from(thetas, {0, 1, 2});
    auto first = aggregate_plain(a, w);
    Messages b;
    b[2] = thetas[2];
    b[0] = thetas[0];
    b[1] = thetas[1];
    EXPECT_EQ(first, aggregate_plain(b, w));
    EXPECT_LT((first - (0.5 * thetas[0] + 0.25 * thetas[1] + 0.25 * thetas[2])).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Aggregation, clip) {
    VectorXd v(2);
    v << 3, 4;
    EXPECT_EQ(clip(v, 5.0), v);
    EXPECT_EQ(clip(v, 10.0), v);
    EXPECT_LT((clip(v, 2.5) - v / 2).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(clip(v, 2.5).norm(), 2.5, 1e-15);
    EXPECT_EQ(clip(clip(v, 1.0), 1.0), clip(v, 1.0));
    EXPECT_EQ(clip(VectorXd::Zero(2), 1.0), VectorXd::Zero(2));
    EXPECT_THROW(clip(v, 0.0), std::invalid_argument);
}

TEST(Aggregation, robust_fixed_point_and_bound) {
    auto thetas = random_thetas(3, 5, 2);
    Eigen::Vector3d w(1.0 / 3, 1.0 / 3, 1.0 / 3);
    Messages same{{0, thetas[0]}, {1, thetas[0]}, {2, thetas[0]}};
    EXPECT_LT((aggregate_robust(thetas[0], same, w, 0.5, ClipReference::kSelfCentered) - thetas[0]).cwiseAbs().maxCoeff(),
              1e-15);

    const double tau = 0.5;
    VectorXd dir = VectorXd::Ones(5).normalized();
    Messages honest{{0, thetas[0]}, {1, thetas[0]}, {2, thetas[0]}};
    Messages hostile = honest;
    hostile[2] = thetas[0] + 100 * tau * dir;
    auto out = aggregate_robust(thetas[0], hostile, w, tau, ClipReference::kSelfCentered);
    EXPECT_LE((out - thetas[0]).norm(), w[2] * tau + 1e-15);
}

TEST(Aggregation, literal_clip_matches_plain_when_inactive) {
    auto thetas = random_thetas(3, 4, 3);
    double largest = 0;
    for (const auto& t : thetas) largest = std::max(largest, t.norm());
    Eigen::Vector3d w(0.5, 0.3, 0.2);
    auto m = messages_from(thetas, {0, 1, 2});
    EXPECT_EQ(aggregate_robust(thetas[0], m, w, largest + 1, ClipReference::kLiteral), aggregate_plain(m, w));
    EXPECT_EQ(aggregate(AggregationRule::plain(), thetas[0], m, w), aggregate_plain(m, w));
    EXPECT_THROW(AggregationRule::robust(-1.0).validate(), std::invalid_argument);
}

TEST(Consensus, distance_examples) {
    VectorXd v(2);
    v << 3, 4;
    std::vector<VectorXd> same{v, v, v};
    EXPECT_EQ(consensus_distance(same), 0.0);
    std::vector<VectorXd> pm{v, -v};
    EXPECT_NEAR(consensus_distance(pm), 5.0, 1e-15);
    EXPECT_EQ(mean_vector(pm), VectorXd::Zero(2));
    std::vector<VectorXd> one{v};
    EXPECT_THROW(consensus_distance(one), std::invalid_argument);
}

TEST(Consensus, gossip_contracts_and_preserves_mean) {
    for (const auto& topo : {Topology::ring(4), Topology::ring(7), Topology::complete(5)}) {
        auto w = metropolis_weights(topo);
        const double gap = spectral_gap(w);
        auto thetas = random_thetas(topo.num_nodes(), 6, 4);
        const VectorXd mean = mean_vector(thetas);
        auto deviation = [&] {
            double sq = 0;
            for (const auto& t : thetas) sq += (t - mean).squaredNorm();
            return std::sqrt(sq);
        };
        const double start = deviation();
        for (int round = 1; round <= 20; ++round) {
            thetas = mix_round(thetas, topo, w);
            EXPECT_LT((mean_vector(thetas) - mean).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LE(deviation(), std::pow(gap, round) * start + 1e-12);
        }
        const double last = consensus_distance(thetas);
        if (gap < 0.5) EXPECT_LT(last, 1e-4);
    }
}

TEST(Attacks, gaussian_examples) {
    VectorXd v(3);
    v << 1, 2, 3;
    std::vector<VectorXd> same{v, v, v};
    Rng rng(1);
    EXPECT_EQ(attack_gaussian(same, rng), v);

    std::vector<VectorXd> two{VectorXd::Constant(3, 1.0), VectorXd::Constant(3, 3.0)};
    auto moments = neighbor_moments(two);
    EXPECT_EQ(moments.mean, VectorXd::Constant(3, 2.0));
    EXPECT_EQ(moments.variance, VectorXd::Constant(3, 1.0));

    std::vector<VectorXd> wide{VectorXd::Constant(20000, 1.0), VectorXd::Constant(20000, 3.0)};
    auto draw = attack_gaussian(wide, rng);
    const double mean = draw.mean();
    const double var = (draw.array() - mean).square().mean();
    EXPECT_NEAR(mean, 2.0, 0.03);
    EXPECT_NEAR(var, 1.0, 0.04);

    Rng a(7), b(7);
    EXPECT_EQ(attack_gaussian(two, a), attack_gaussian(two, b));
    std::vector<VectorXd> none;
    EXPECT_THROW(attack_gaussian(none, rng), std::invalid_argument);
}

TEST(Attacks, pooled_variance) {
    std::vector<VectorXd> two{Eigen::Vector2d(0, 10), Eigen::Vector2d(2, 10)};
    Rng rng(3);
    // Pooled over all four entries the variance is large, so the second
    // coordinate is no longer pinned to its mean.
    auto pooled = attack_gaussian(two, rng, VarianceEstimator::kPooled);
    EXPECT_NE(pooled[1], 10.0);
    auto elementwise = attack_gaussian(two, rng, VarianceEstimator::kElementwise);
    EXPECT_EQ(elementwise[1], 10.0);
}

TEST(Attacks, signflip_examples) {
    VectorXd v(2);
    v << 1, -4;
    std::vector<VectorXd> same{v, v};
    EXPECT_EQ(attack_signflip(same), -v);
    std::vector<VectorXd> opposite{v, -v};
    EXPECT_EQ(attack_signflip(opposite), VectorXd::Zero(2));
    std::vector<VectorXd> single{v};
    std::vector<VectorXd> flipped{attack_signflip(single)};
    EXPECT_EQ(attack_signflip(flipped), v);
    std::vector<VectorXd> none;
    EXPECT_THROW(attack_signflip(none), std::invalid_argument);
}

TEST(Roles, names) {
    EXPECT_EQ(to_string(NodeRole::kHonest), "honest");
    EXPECT_EQ(to_string(NodeRole::kGaussianAttacker), "gaussian");
    EXPECT_EQ(to_string(NodeRole::kSignFlipAttacker), "signflip");
    EXPECT_EQ(to_string(TopologyKind::kRing), "ring");
}
