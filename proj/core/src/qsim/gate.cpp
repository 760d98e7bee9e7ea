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

#include "dqkl/qsim/gate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dqkl::qsim {

Gate Gate::adjoint() const {
    Gate g = *this;
    if (kind == GateKind::kRotY || kind == GateKind::kRotZ) g.angle = -angle;
    return g;
}

Mat2 Gate::matrix() const {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const double h = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::kHadamard:
            return {h, h, h, -h};
        case GateKind::kRotZ:
            return {Complex{c, -s}, 0.0, 0.0, Complex{c, s}};
        case GateKind::kRotY:
            return {c, -s, s, c};
        case GateKind::kCnot:
            break;
    }
    throw std::logic_error("CNOT has no single-qubit matrix");
}

Matrix Gate::unitary(int num_qubits) const {
    const auto d = dimension_for(num_qubits);
    Matrix u = Matrix::Zero(d, d);
    if (kind == GateKind::kCnot) {
        const std::size_t cb = std::size_t{1} << qubit;
        const std::size_t tb = std::size_t{1} << target;
        for (std::size_t k = 0; k < d; ++k) u((k & cb) ? (k ^ tb) : k, k) = 1.0;
        return u;
    }
    const Mat2 g = matrix();
    const std::size_t b = std::size_t{1} << qubit;
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t k0 = k & ~b;
        const int in = (k & b) ? 1 : 0;
        u(k0, k) = g[0 * 2 + in];
        u(k0 | b, k) = g[1 * 2 + in];
    }
    return u;
}

std::string Gate::str() const {
    std::ostringstream out;
    switch (kind) {
        case GateKind::kHadamard:
            out << "H(" << qubit << ")";
            break;
        case GateKind::kRotZ:
            out << "RZ(" << qubit << ", " << angle << ")";
            break;
        case GateKind::kRotY:
            out << "RY(" << qubit << ", " << angle << ")";
            break;
        case GateKind::kCnot:
            out << "CNOT(" << qubit << " -> " << target << ")";
            break;
    }
    return out.str();
}

void validate(const Gate& gate, int num_qubits) {
    auto check = [&](int q) {
        if (q < 0 || q >= num_qubits) {
            throw std::out_of_range(gate.str() + ": qubit " + std::to_string(q) +
                                    " outside register of " + std::to_string(num_qubits));
        }
    };
    check(gate.qubit);
    if (gate.kind == GateKind::kCnot) {
        check(gate.target);
        if (gate.target == gate.qubit) {
            throw std::invalid_argument(gate.str() + ": control equals target");
        }
    }
    if (!std::isfinite(gate.angle)) throw std::invalid_argument(gate.str() + ": non-finite angle");
}

void apply_in_place(Matrix& m, const Gate& gate) {
    switch (gate.kind) {
        case GateKind::kHadamard:
            conjugate_hadamard(m, gate.qubit);
            return;
        case GateKind::kRotZ:
            conjugate_rot_z(m, gate.qubit, gate.angle);
            return;
        case GateKind::kRotY:
            conjugate_rot_y(m, gate.qubit, gate.angle);
            return;
        case GateKind::kCnot:
            conjugate_cnot(m, gate.qubit, gate.target);
            return;
    }
}

}  // namespace dqkl::qsim
