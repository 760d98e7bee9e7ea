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

#include "dqkl/qsim/gate.hpp"
#include "dqkl/qsim/operator.hpp"

namespace dqkl::qsim {

struct KrausSet;

/// Invariant tolerances for a valid register state.
struct StateTolerance {
    double hermiticity = 1e-12;
    double trace = 1e-10;
    double min_eigenvalue = -1e-9;
    double purity = 1e-10;
};

/// Hermitian, trace-one, positive semidefinite state of an n-qubit register.
///
/// Instances are immutable values; every operation returns a new state.
class DensityMatrix {
   public:
    /// |0...0><0...0|. Throws std::invalid_argument outside [1, kMaxQubits].
    static DensityMatrix zero_state(int num_qubits);

    /// I / D.
    static DensityMatrix maximally_mixed(int num_qubits);

    /// Adopts `m` after checking every invariant; throws std::invalid_argument.
    static DensityMatrix from_matrix(Matrix m, const StateTolerance& tol = {});

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

    Complex trace() const { return m_.trace(); }
    double purity() const;
    /// max |m_ij - conj(m_ji)|.
    double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    /// Throws std::logic_error naming the first violated invariant.
    void check_invariants(const StateTolerance& tol = {}) const;

   private:
    DensityMatrix(Matrix m, int num_qubits) : m_(std::move(m)), num_qubits_(num_qubits) {}

    friend DensityMatrix apply_gate(const DensityMatrix&, const Gate&);
    friend DensityMatrix apply_depolarizing_local(const DensityMatrix&, int, double);
    friend DensityMatrix apply_depolarizing_global(const DensityMatrix&, double);
    friend DensityMatrix apply_kraus(const DensityMatrix&, const KrausSet&);

    Matrix m_;
    int num_qubits_;
};

DensityMatrix apply_gate(const DensityMatrix& rho, const Gate& gate);

/// rho' = (1-p) rho + p (Tr_q rho) (x) I/2, re-embedded at `qubit`.
DensityMatrix apply_depolarizing_local(const DensityMatrix& rho, int qubit, double p);

/// rho' = (1-p) rho + p I/D.
DensityMatrix apply_depolarizing_global(const DensityMatrix& rho, double p);

/// <0...0|rho|0...0>, clamped to [0, 1].
double projector_probability(const DensityMatrix& rho);

/// Throws std::invalid_argument unless p is a finite value in [0, 1].
void check_probability(double p, const char* what);

}  // namespace dqkl::qsim
