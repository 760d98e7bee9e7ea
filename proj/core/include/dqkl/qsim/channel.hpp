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

#include <span>
#include <variant>
#include <vector>

#include "dqkl/qsim/density_matrix.hpp"

namespace dqkl::qsim {

/// Full-register Kraus operators {E_a} with sum_a E_a^dagger E_a = I.
struct KrausSet {
    std::vector<Matrix> ops;

    /// max-abs entry of sum_a E_a^dagger E_a - I.
    double completeness_error() const;
};

struct NoChannel {};
/// Single-qubit depolarizing channel applied to each listed qubit.
struct PerGateDepolarizing {
    double p = 0.0;
};
/// (1-p) rho + p I/D on the whole register.
struct GlobalDepolarizing {
    double p = 0.0;
};

using NoiseChannel = std::variant<NoChannel, PerGateDepolarizing, GlobalDepolarizing, KrausSet>;

/// Embeds a 2x2 operator at `qubit` of an n-qubit register.
Matrix embed(const Mat2& op, int qubit, int num_qubits);

/// {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z} on `qubit`.
KrausSet depolarizing_kraus(int num_qubits, int qubit, double p);

/// Pauli-twirl realization of the global channel; D^2 operators, so keep n small.
KrausSet global_depolarizing_kraus(int num_qubits, double p);

/// sum_a E_a rho E_a^dagger. Throws std::invalid_argument if the set is empty,
/// mis-sized, or incomplete beyond 1e-10.
DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus);

/// Applies any channel form. `qubits` selects the targets of PerGateDepolarizing
/// and is ignored by the whole-register forms.
DensityMatrix apply_channel(const DensityMatrix& rho, const NoiseChannel& channel,
                            std::span<const int> qubits = {});

}  // namespace dqkl::qsim
