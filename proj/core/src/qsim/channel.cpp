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

#include "dqkl/qsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqkl::qsim {

namespace {

constexpr Mat2 kPauliI{1.0, 0.0, 0.0, 1.0};
constexpr Mat2 kPauliX{0.0, 1.0, 1.0, 0.0};
const Mat2 kPauliY{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0};
constexpr Mat2 kPauliZ{1.0, 0.0, 0.0, -1.0};

}  // namespace

double KrausSet::completeness_error() const {
    if (ops.empty()) return 1.0;
    Matrix acc = Matrix::Zero(ops.front().rows(), ops.front().cols());
    for (const auto& e : ops) acc.noalias() += e.adjoint() * e;
    acc -= Matrix::Identity(acc.rows(), acc.cols());
    return acc.cwiseAbs().maxCoeff();
}

Matrix embed(const Mat2& op, int qubit, int num_qubits) {
    const auto d = dimension_for(num_qubits);
    if (qubit < 0 || qubit >= num_qubits) throw std::out_of_range("embed: qubit out of range");
    const std::size_t b = std::size_t{1} << qubit;
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t k0 = k & ~b;
        const int in = (k & b) ? 1 : 0;
        out(k0, k) = op[0 * 2 + in];
        out(k0 | b, k) = op[1 * 2 + in];
    }
    return out;
}

KrausSet depolarizing_kraus(int num_qubits, int qubit, double p) {
    check_probability(p, "depolarizing Kraus");
    const double a = std::sqrt(1.0 - 3.0 * p / 4.0);
    const double b = std::sqrt(p / 4.0);
    KrausSet set;
    set.ops.push_back(a * embed(kPauliI, qubit, num_qubits));
    set.ops.push_back(b * embed(kPauliX, qubit, num_qubits));
    set.ops.push_back(b * embed(kPauliY, qubit, num_qubits));
    set.ops.push_back(b * embed(kPauliZ, qubit, num_qubits));
    return set;
}

KrausSet global_depolarizing_kraus(int num_qubits, double p) {
    check_probability(p, "global depolarizing Kraus");
    const auto d = dimension_for(num_qubits);
    const double d2 = static_cast<double>(d * d);
    const Mat2 paulis[4] = {kPauliI, kPauliX, kPauliY, kPauliZ};
    KrausSet set;
    // (1/D^2) sum_P P rho P = I/D over all n-qubit Pauli strings P.
    for (std::size_t code = 0; code < d * d; ++code) {
        Matrix op = Matrix::Identity(d, d);
        std::size_t rest = code;
        for (int q = 0; q < num_qubits; ++q, rest /= 4) {
            op = embed(paulis[rest % 4], q, num_qubits) * op;
        }
        const double weight = code == 0 ? 1.0 - p + p / d2 : p / d2;
        set.ops.push_back(std::sqrt(weight) * op);
    }
    return set;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus) {
    if (kraus.ops.empty()) throw std::invalid_argument("empty Kraus set");
    const auto d = static_cast<Eigen::Index>(rho.dim());
    for (const auto& e : kraus.ops) {
        if (e.rows() != d || e.cols() != d) {
            throw std::invalid_argument("Kraus operator dimension does not match the state");
        }
    }
    const double err = kraus.completeness_error();
    if (err > 1e-10) {
        throw std::invalid_argument("incomplete Kraus set: completeness error " +
                                    std::to_string(err));
    }
    Matrix out = Matrix::Zero(d, d);
    for (const auto& e : kraus.ops) out.noalias() += e * rho.matrix() * e.adjoint();
    return DensityMatrix(std::move(out), rho.num_qubits());
}

DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& channel,
                            std::span<const int> qubits) {
    if (std::holds_alternative<NoChannel>(channel)) return rho;
    if (const auto* local = std::get_if<PerGateDepolarizing>(&channel)) {
        DensityMatrix out = rho;
        for (int q : qubits) out = apply_depolarizing_local(out, q, local->p);
        return out;
    }
    if (const auto* global = std::get_if<GlobalDepolarizing>(&channel)) {
        return apply_depolarizing_global(rho, global->p);
    }
    return apply_kraus(rho, std::get<KrausSet>(channel));
}

}  // namespace dqkl::qsim
