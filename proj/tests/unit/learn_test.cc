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

#include "dqkl/data/data.hpp"
#include "dqkl/learn/alignment.hpp"
#include "dqkl/learn/gram.hpp"
#include "dqkl/learn/ridge.hpp"

using namespace dqkl;
using namespace dqkl::learn;
using qkernel::FeatureMapSpec;
using qkernel::NoiseModel;
using qkernel::ParameterVector;

namespace {

LabeledDataset small_checkerboard(int per_cell, std::uint64_t seed) {
    data::CheckerboardSpec cb;
    cb.grid = 2;
    cb.points_per_cell = per_cell;
    cb.seed = seed;
    return data::gen_checkerboard(cb);
}

ParameterVector random_theta(int size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1, 1);
    ParameterVector theta(size);
    for (auto& v : theta) v = u(rng);
    return theta;
}

// Alignment straight from its definition, as an independent check.
double reference_alignment(const Eigen::MatrixXd& k, const Eigen::VectorXd& y) {
    double num = 0, sq = 0;
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        for (Eigen::Index j = 0; j < k.cols(); ++j) {
            num += y[i] * y[j] * k(i, j);
            sq += k(i, j) * k(i, j);
        }
    }
    return num / (static_cast<double>(y.size()) * std::sqrt(sq));
}

}  // namespace

TEST(Dataset, validation_and_helpers) {
    EXPECT_THROW(LabeledDataset({{{0.1, 0.2}, 0}}), std::invalid_argument);
    EXPECT_THROW(LabeledDataset({{{0.1, 0.2}, 1}, {{0.3}, -1}}), std::invalid_argument);
    LabeledDataset d({{{0.1, 0.2}, 1}, {{0.3, 0.4}, -1}, {{0.5, 0.6}, 1}});
    EXPECT_EQ(d.size(), 3u);
    EXPECT_EQ(d.feature_dim(), 2u);
    EXPECT_EQ(d.count(1), 2u);
    EXPECT_EQ(d.labels(), Eigen::Vector3d(1, -1, 1));
    std::vector<std::size_t> pick{2, 0};
    auto sub = d.subset(pick);
    EXPECT_EQ(sub[0], d[2]);
    EXPECT_EQ(sub[1], d[0]);
    EXPECT_EQ(d.subset(std::vector<std::size_t>{0}).concat(d.subset(std::vector<std::size_t>{1, 2})), d);
    EXPECT_THROW(d.concat(LabeledDataset({{{0.1}, 1}})), std::invalid_argument);
}

TEST(Gram, diagonal_symmetry_and_psd) {
    auto spec = FeatureMapSpec::alternating(3, 2);
    auto d = small_checkerboard(3, 1);
    auto theta = random_theta(spec.num_parameters(), 2);
    for (auto noise : {NoiseModel::exact(), NoiseModel::per_gate(0.01), NoiseModel::global_analytic(0.2)}) {
        auto k = gram(spec, theta, d, noise);
        ASSERT_EQ(k.rows(), 12);
        EXPECT_EQ(k, k.transpose());
        EXPECT_GE(k.minCoeff(), 0.0);
        EXPECT_LE(k.maxCoeff(), 1.0);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
        EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10) << noise.str();
        if (noise.mode == qkernel::NoiseMode::kExact) {
            for (Eigen::Index i = 0; i < k.rows(); ++i) EXPECT_NEAR(k(i, i), 1.0, 1e-10);
        }
        if (noise.mode == qkernel::NoiseMode::kGlobalAnalytic) {
            for (Eigen::Index i = 0; i < k.rows(); ++i) EXPECT_NEAR(k(i, i), 0.8 + 0.2 / 8, 1e-10);
        }
    }
}

TEST(Gram, state_route_matches_pairwise_circuits) {
    auto spec = FeatureMapSpec::alternating(3, 2);
    auto d = small_checkerboard(2, 3);
    auto theta = random_theta(spec.num_parameters(), 4);
    for (auto noise : {NoiseModel::exact(), NoiseModel::per_gate(0.02), NoiseModel::global_analytic(0.1)}) {
        auto fast = gram(spec, theta, d, noise);
        auto slow = gram_by_circuits(spec, theta, d, noise);
        EXPECT_LT((fast - slow).cwiseAbs().maxCoeff(), 1e-12) << noise.str();
    }
}

TEST(Gram, cross_gram_matches_kernel_eval) {
    auto spec = FeatureMapSpec::alternating(2, 2);
    auto a = small_checkerboard(1, 5);
    auto b = small_checkerboard(2, 6);
    auto theta = random_theta(spec.num_parameters(), 7);
    auto noise = NoiseModel::per_gate(0.01);
    auto k = cross_gram(spec, theta, a, b, noise);
    ASSERT_EQ(k.rows(), 4);
    ASSERT_EQ(k.cols(), 8);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 8; ++j) {
            EXPECT_NEAR(k(i, j), qkernel::kernel_eval(spec, theta, a[i].x, b[j].x, noise), 1e-12);
        }
    }
}

TEST(Gram, shots_are_seeded_and_symmetric) {
    auto spec = FeatureMapSpec::alternating(2, 1);
    auto d = small_checkerboard(2, 8);
    auto theta = random_theta(2, 9);
    auto noise = NoiseModel::exact().with_shots(100);
    Rng r1(1), r2(1), r3(2);
    auto k1 = gram(spec, theta, d, noise, &r1);
    EXPECT_EQ(k1, gram(spec, theta, d, noise, &r2));
    EXPECT_NE(k1, gram(spec, theta, d, noise, &r3));
    EXPECT_EQ(k1, k1.transpose());
    EXPECT_THROW(gram(spec, theta, d, noise), std::invalid_argument);
    EXPECT_THROW(gram_with_gradient(spec, theta, d, noise), std::invalid_argument);
}

TEST(Alignment, examples) {
    Eigen::Vector2d y(1, -1);
    EXPECT_NEAR(alignment(Eigen::Matrix2d::Identity(), y), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(alignment(ideal_gram(y), y), 1.0, 1e-15);
    EXPECT_NEAR(alignment(Eigen::Matrix2d::Constant(0.5), y), 0.0, 1e-15);
    EXPECT_THROW(alignment(Eigen::Matrix2d::Zero(), y), DegenerateKernelError);
    Eigen::Matrix2d ideal;
    ideal << 1, -1, -1, 1;
    EXPECT_EQ(ideal_gram(y), ideal);
}

TEST(Alignment, matches_definition_and_bounds) {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + trial % 5;
        Eigen::MatrixXd a(n, n);
        for (auto& v : a.reshaped()) v = u(rng);
        Eigen::MatrixXd k = a * a.transpose();
        Eigen::VectorXd y(n);
        for (auto& v : y) v = u(rng) < 0.5 ? -1 : 1;
        const double value = alignment(k, y);
        EXPECT_NEAR(value, reference_alignment(k, y), 1e-13);
        EXPECT_LE(std::abs(value), 1.0 + 1e-12);
    }
}

TEST(Alignment, weights_and_derivative_match_finite_differences) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::MatrixXd a(6, 6), b(6, 6);
    for (auto& v : a.reshaped()) v = u(rng);
    for (auto& v : b.reshaped()) v = u(rng) - 0.5;
    Eigen::MatrixXd k = a * a.transpose();
    Eigen::MatrixXd dk = b + b.transpose();
    Eigen::VectorXd y(6);
    y << 1, -1, 1, 1, -1, -1;
    const double h = 1e-6;
    const double fd = (reference_alignment(k + h * dk, y) - reference_alignment(k - h * dk, y)) / (2 * h);
    EXPECT_NEAR(alignment_derivative(k, dk, y), fd, 1e-8);
    EXPECT_NEAR((alignment_weights(k, y).array() * dk.array()).sum(), fd, 1e-8);
    EXPECT_EQ(alignment_derivative(k, Eigen::MatrixXd::Zero(6, 6), y), 0.0);
}

TEST(Loss, gradient_routes_match_finite_differences) {
    auto spec = FeatureMapSpec::alternating(3, 2);
    LabeledDataset d({{{0.1, 0.2}, 1}, {{0.8, 0.3}, -1}, {{0.4, 0.9}, -1}, {{0.6, 0.6}, 1}});
    auto theta = random_theta(spec.num_parameters(), 12);
    for (auto noise : {NoiseModel::exact(), NoiseModel::per_gate(0.01), NoiseModel::global_analytic(0.3)}) {
        auto literal = loss_grad(d, theta, spec, noise);
        auto eval = evaluate_loss(d, theta, spec, noise);
        EXPECT_NEAR(eval.loss, loss(d, theta, spec, noise), 1e-14);
        EXPECT_NEAR(eval.alignment, -eval.loss, 0.0);
        for (int t = 0; t < spec.num_parameters(); ++t) {
            const double h = 1e-5;
            ParameterVector plus = theta, minus = theta;
            plus[t] += h;
            minus[t] -= h;
            const double fd = (loss(d, plus, spec, noise) - loss(d, minus, spec, noise)) / (2 * h);
            EXPECT_NEAR(literal[t], fd, 1e-8) << noise.str() << " t=" << t;
            EXPECT_NEAR(eval.grad[t], literal[t], 1e-12) << noise.str() << " t=" << t;
        }
    }
}

TEST(Loss, gram_with_gradient_matches_kernel_grad) {
    auto spec = FeatureMapSpec::alternating(2, 2);
    LabeledDataset d({{{0.1, 0.2}, 1}, {{0.8, 0.3}, -1}, {{0.4, 0.9}, -1}});
    auto theta = random_theta(spec.num_parameters(), 13);
    auto noise = NoiseModel::global_analytic(0.25);
    auto gg = gram_with_gradient(spec, theta, d, noise);
    EXPECT_LT((gg.value - gram(spec, theta, d, noise)).cwiseAbs().maxCoeff(), 1e-14);
    for (int t = 0; t < spec.num_parameters(); ++t) {
        for (Eigen::Index i = 0; i < 3; ++i) {
            for (Eigen::Index j = 0; j < 3; ++j) {
                EXPECT_NEAR(gg.derivative[t](i, j),
                            qkernel::kernel_grad(spec, theta, d[i].x, d[j].x, noise, t), 1e-12);
            }
        }
    }
}

TEST(Loss, strong_global_noise_flattens_gradient) {
    auto spec = FeatureMapSpec::alternating(3, 2);
    auto d = small_checkerboard(2, 14);
    auto theta = random_theta(spec.num_parameters(), 15);
    const double clean = evaluate_loss(d, theta, spec, NoiseModel::exact()).grad.norm();
    const double noisy = evaluate_loss(d, theta, spec, NoiseModel::global_analytic(0.999)).grad.norm();
    EXPECT_GT(clean, 0.0);
    EXPECT_LE(noisy, 1e-2 * clean);
}

TEST(NoisyGradient, analytic_form) {
    auto spec = FeatureMapSpec::alternating(3, 2);
    auto d = small_checkerboard(2, 16);
    auto theta = random_theta(spec.num_parameters(), 17);
    auto gg = gram_with_gradient(spec, theta, d, NoiseModel::exact());
    const Eigen::VectorXd y = d.labels();
    const std::size_t dim = spec.dimension();
    for (int t : {0, 3, 5}) {
        const auto& k = gg.value;
        const auto& dk = gg.derivative[t];
        EXPECT_NEAR(noisy_alignment_grad_analytic(k, dk, 0.0, dim, y), alignment_derivative(k, dk, y), 1e-14);
        double last = INFINITY;
        for (double p : {0.0, 0.5, 0.9, 0.99, 0.999}) {
            const double g = noisy_alignment_grad_analytic(k, dk, p, dim, y);
            // Finite differences of the alignment of the depolarized kernel.
            auto noisy = [&](double s) {
                Eigen::MatrixXd m = (1 - p) * (k + s * dk);
                m.array() += p / static_cast<double>(dim);
                return reference_alignment(m, y);
            };
            const double h = 1e-6;
            EXPECT_NEAR(g, (noisy(h) - noisy(-h)) / (2 * h), 1e-8) << "p=" << p;
            EXPECT_LT(std::abs(g), last) << "p=" << p;
            last = std::abs(g);
        }
    }
    EXPECT_THROW(noisy_alignment_grad_analytic(gg.value, gg.derivative[0], 1.0, dim, y), std::invalid_argument);
    Eigen::VectorXd unbalanced = y;
    unbalanced[0] = -unbalanced[0];
    EXPECT_THROW(noisy_alignment_grad_analytic(gg.value, gg.derivative[0], 0.5, dim, unbalanced),
                 std::invalid_argument);
}

TEST(Ridge, ideal_kernel_solution) {
    Eigen::VectorXd y(4);
    y << 1, -1, -1, 1;
    auto model = fit_ridge(ideal_gram(y), y, 1.0);
    EXPECT_LT((model.alpha - y / 5.0).cwiseAbs().maxCoeff(), 1e-12);
    auto heavy = fit_ridge(ideal_gram(y), y, 1e6);
    EXPECT_LT((heavy.alpha - y / (1e6 + 4)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(accuracy(model, ideal_gram(y), y), 1.0);
    EXPECT_EQ(accuracy(model, -ideal_gram(y), y), 0.0);
}

TEST(Ridge, predict_tie_is_positive) {
    RidgeModel model;
    model.alpha = Eigen::Vector2d(1, -1);
    EXPECT_EQ(predict(model, Eigen::Vector2d(0.5, 0.5)), 1);
    EXPECT_EQ(predict(model, Eigen::Vector2d(0.4, 0.5)), -1);
    EXPECT_THROW(predict(model, Eigen::Vector3d(1, 1, 1)), std::invalid_argument);
}

TEST(Ridge, rejects_bad_inputs) {
    Eigen::Vector2d y(1, -1);
    Eigen::Matrix2d asym;
    asym << 1, 0.5, 0.2, 1;
    EXPECT_THROW(fit_ridge(asym, y, 0.1), std::invalid_argument);
    EXPECT_THROW(fit_ridge(Eigen::Matrix2d::Identity(), y, -1.0), std::invalid_argument);
    EXPECT_THROW(fit_ridge(Eigen::Matrix3d::Identity(), y, 0.1), std::invalid_argument);
}

TEST(Ridge, score_on_quantum_kernel) {
    auto spec = FeatureMapSpec::alternating(3, 2);
    auto train = small_checkerboard(4, 18);
    auto test = small_checkerboard(3, 19);
    auto theta = random_theta(spec.num_parameters(), 20);
    auto noise = NoiseModel::exact();
    auto model = fit_ridge(spec, theta, train, noise, kDefaultRidge);
    EXPECT_EQ(model.training, train);
    const double s = score(model, test, spec, theta, noise);
    auto k = cross_gram(spec, theta, test, train, noise);
    EXPECT_EQ(s, accuracy(model, k, test.labels()));
    // Flipping every evaluation label complements the accuracy.
    std::vector<Sample> flipped(test.begin(), test.end());
    for (auto& p : flipped) p.label = -p.label;
    EXPECT_NEAR(score(model, LabeledDataset(flipped), spec, theta, noise), 1.0 - s, 1e-15);
}
