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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqkl/qkernel/feature_map.hpp"
#include "dqkl/qsim/operator.hpp"
#include "dqkl/util/random.hpp"

namespace dqkl::qkernel {

enum class NoiseMode {
    kExact,           ///< noiseless circuit
    kPerGate,         ///< single-qubit depolarizing after every gate
    kGlobalAnalytic,  ///< noiseless value mapped through (1-p) K + p/D
};

struct NoiseModel {
    NoiseMode mode = NoiseMode::kExact;
    /// Per-gate probability for kPerGate, effective global rate for kGlobalAnalytic.
    double rate = 0.0;
    /// Measurement shots per kernel entry; unset means exact expectation values.
    std::optional<int> shots;

    static NoiseModel exact() { return {}; }
    static NoiseModel per_gate(double p) { return {NoiseMode::kPerGate, p, std::nullopt}; }
    static NoiseModel global_analytic(double p) {
        return {NoiseMode::kGlobalAnalytic, p, std::nullopt};
    }
    NoiseModel with_shots(int m) const {
        NoiseModel copy = *this;
        copy.shots = m;
        return copy;
    }
    NoiseModel without_shots() const {
        NoiseModel copy = *this;
        copy.shots.reset();
        return copy;
    }

    /// Depolarizing probability applied after each simulated gate.
    double gate_noise() const { return mode == NoiseMode::kPerGate ? rate : 0.0; }

    void validate() const;
    std::string str() const;
};

/// Noisy forward pass: every gate followed by depolarizing on its qubits.
void run_forward(qsim::Matrix& m, std::span<const qsim::Gate> gates, double gate_noise);

/// Exact dual of run_forward: gates in reverse order, each adjoint gate
/// preceded by the depolarizing channel on its qubits.
void run_adjoint(qsim::Matrix& m, std::span<const qsim::Gate> gates, double gate_noise);

/// Probability of returning to |0...0> after forward(first) then adjoint(second).
double interference_probability(int num_qubits, std::span<const qsim::Gate> first,
                                std::span<const qsim::Gate> second, double gate_noise);

/// Noisy quantum kernel K_e(x, x') from the compute-uncompute circuit.
///
/// In kGlobalAnalytic mode the noiseless value is mapped through
/// analytic_noisy_kernel. With shots set, returns the mean of `shots`
/// Bernoulli draws from `rng`, which must then be non-null.
double kernel_eval(const FeatureMapSpec& spec, const ParameterVector& theta,
                   std::span<const double> x, std::span<const double> x_prime,
                   const NoiseModel& noise, Rng* rng = nullptr);

/// p = 1 - (1 - p_gate)^(2 L).
double effective_rate(double gate_noise, int layers);

/// (1 - p) K + p / D.
double analytic_noisy_kernel(double kernel, double p, std::size_t dim);

/// Two-term shift rule 0.5 [f(a + pi/2) - f(a - pi/2)] for a gate angle a.
double parameter_shift(const std::function<double(double)>& f, double angle);

/// dK_e / d theta_t by the parameter-shift rule on both circuit occurrences of
/// theta_t (the forward RotY and its adjoint). Requires noise without shots.
double kernel_grad(const FeatureMapSpec& spec, const ParameterVector& theta,
                   std::span<const double> x, std::span<const double> x_prime,
                   const NoiseModel& noise, int t);

/// Mean of m Bernoulli(kernel) draws.
double shot_sample(double kernel, int m, Rng& rng);

}  // namespace dqkl::qkernel
