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

#include <string>

#include "dqkl/qsim/operator.hpp"

namespace dqkl::qsim {

enum class GateKind { kHadamard, kRotZ, kRotY, kCnot };

/// One circuit instruction. For kCnot, `qubit` is the control.
struct Gate {
    GateKind kind = GateKind::kHadamard;
    int qubit = 0;
    int target = -1;
    double angle = 0.0;

    static Gate hadamard(int qubit) { return {GateKind::kHadamard, qubit, -1, 0.0}; }
    static Gate rot_z(int qubit, double angle) { return {GateKind::kRotZ, qubit, -1, angle}; }
    static Gate rot_y(int qubit, double angle) { return {GateKind::kRotY, qubit, -1, angle}; }
    static Gate cnot(int control, int target) { return {GateKind::kCnot, control, target, 0.0}; }

    /// Inverse gate: rotations negate their angle, H and CNOT are self-inverse.
    Gate adjoint() const;

    /// Number of qubits touched: 2 for kCnot (qubit, target), else 1.
    int arity() const { return kind == GateKind::kCnot ? 2 : 1; }

    /// 2x2 matrix of a single-qubit gate. Throws for kCnot.
    Mat2 matrix() const;

    /// Full 2^n x 2^n unitary. Intended for tests and small registers.
    Matrix unitary(int num_qubits) const;

    std::string str() const;

    bool operator==(const Gate&) const = default;
};

/// Throws std::out_of_range for bad indices, std::invalid_argument when
/// control == target or the angle is not finite.
void validate(const Gate& gate, int num_qubits);

/// m <- U m U^dagger.
void apply_in_place(Matrix& m, const Gate& gate);

}  // namespace dqkl::qsim
