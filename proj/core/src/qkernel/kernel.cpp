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

#include "dqkl/qkernel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dqkl/qsim/density_matrix.hpp"

namespace dqkl::qkernel {

void NoiseModel::validate() const {
    if (mode != NoiseMode::kExact) qsim::check_probability(rate, "noise model");
    if (shots && *shots < 1) throw std::invalid_argument("shot count must be at least 1");
}

std::string NoiseModel::str() const {
    std::ostringstream out;
    switch (mode) {
        case NoiseMode::kExact:
            out << "exact";
            break;
        case NoiseMode::kPerGate:
            out << "per_gate(" << rate << ")";
            break;
        case NoiseMode::kGlobalAnalytic:
            out << "global(" << rate << ")";
            break;
    }
    if (shots) out << " shots=" << *shots;
    return out.str();
}

void run_forward(qsim::Matrix& m, std::span<const qsim::Gate> gates, double gate_noise) {
    for (const auto& g : gates) {
        qsim::apply_in_place(m, g);
        if (gate_noise > 0.0) {
            qsim::depolarize(m, g.qubit, gate_noise);
            if (g.kind == qsim::GateKind::kCnot) qsim::depolarize(m, g.target, gate_noise);
        }
    }
}

void run_adjoint(qsim::Matrix& m, std::span<const qsim::Gate> gates, double gate_noise) {
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        if (gate_noise > 0.0) {
            if (it->kind == qsim::GateKind::kCnot) qsim::depolarize(m, it->target, gate_noise);
            qsim::depolarize(m, it->qubit, gate_noise);
        }
        qsim::apply_in_place(m, it->adjoint());
    }
}

double interference_probability(int num_qubits, std::span<const qsim::Gate> first,
                                std::span<const qsim::Gate> second, double gate_noise) {
    qsim::check_probability(gate_noise, "gate noise");
    for (const auto& g : first) qsim::validate(g, num_qubits);
    for (const auto& g : second) qsim::validate(g, num_qubits);
    auto rho = qsim::DensityMatrix::zero_state(num_qubits).matrix();
    run_forward(rho, first, gate_noise);
    run_adjoint(rho, second, gate_noise);
    return std::clamp(rho(0, 0).real(), 0.0, 1.0);
}

namespace {

double noisy_value(const FeatureMapSpec& spec, std::span<const qsim::Gate> first,
                   std::span<const qsim::Gate> second, const NoiseModel& noise) {
    const double k = interference_probability(spec.num_qubits, first, second, noise.gate_noise());
    if (noise.mode == NoiseMode::kGlobalAnalytic) {
        return analytic_noisy_kernel(k, noise.rate, spec.dimension());
    }
    return k;
}

}  // namespace

double kernel_eval(const FeatureMapSpec& spec, const ParameterVector& theta,
                   std::span<const double> x, std::span<const double> x_prime,
                   const NoiseModel& noise, Rng* rng) {
    noise.validate();
    if (x.size() != x_prime.size()) throw std::invalid_argument("feature vectors differ in size");
    const auto first = build_feature_map(spec, theta, x);
    const auto second = build_feature_map(spec, theta, x_prime);
    const double k = noisy_value(spec, first, second, noise);
    if (!noise.shots) return k;
    if (rng == nullptr) throw std::invalid_argument("shot sampling requires a random stream");
    return shot_sample(k, *noise.shots, *rng);
}

double effective_rate(double gate_noise, int layers) {
    qsim::check_probability(gate_noise, "gate noise");
    if (layers < 1) throw std::invalid_argument("layer count must be positive");
    return 1.0 - std::pow(1.0 - gate_noise, 2 * layers);
}

double analytic_noisy_kernel(double kernel, double p, std::size_t dim) {
    qsim::check_probability(p, "global depolarizing");
    if (!(kernel >= -1e-9 && kernel <= 1.0 + 1e-9)) {
        throw std::invalid_argument("kernel value outside [0, 1]");
    }
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    const double value = (1.0 - p) * kernel + p / static_cast<double>(dim);
    return std::clamp(value, 0.0, 1.0);
}

double parameter_shift(const std::function<double(double)>& f, double angle) {
    constexpr double kShift = std::numbers::pi / 2;
    return 0.5 * (f(angle + kShift) - f(angle - kShift));
}

double kernel_grad(const FeatureMapSpec& spec, const ParameterVector& theta,
                   std::span<const double> x, std::span<const double> x_prime,
                   const NoiseModel& noise, int t) {
    noise.validate();
    if (noise.shots) throw std::invalid_argument("kernel gradients require exact expectations");
    if (t < 0 || t >= spec.num_parameters()) {
        throw std::out_of_range("parameter index " + std::to_string(t) + " out of range");
    }
    auto first = build_feature_map(spec, theta, x);
    auto second = build_feature_map(spec, theta, x_prime);
    const std::size_t pos = spec.rot_y_position(t);

    // Forward occurrence: RotY(theta_t) executed as written.
    const double d_forward = parameter_shift(
        [&](double a) {
            auto shifted = first;
            shifted[pos].angle = a;
            return noisy_value(spec, shifted, second, noise);
        },
        theta[t]);
    // Adjoint occurrence executes RotY(-theta_t). Shifting the executed angle
    // by -+pi/2 is shifting the source angle by +-pi/2, which absorbs the
    // chain-rule sign of d(-theta_t)/d(theta_t).
    const double d_adjoint = parameter_shift(
        [&](double a) {
            auto shifted = second;
            shifted[pos].angle = a;
            return noisy_value(spec, first, shifted, noise);
        },
        theta[t]);
    return d_forward + d_adjoint;
}

double shot_sample(double kernel, int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("shot count must be at least 1");
    const double p = std::clamp(kernel, 0.0, 1.0);
    // The hit count of m independent Bernoulli(p) shots is Binomial(m, p).
    std::binomial_distribution<int> hits(m, p);
    return static_cast<double>(hits(rng)) / m;
}

}  // namespace dqkl::qkernel
