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

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace dqkl::qsim {

using Complex = std::complex<double>;

/// Dense square operator on the 2^n dimensional register space.
///
/// Basis index bit q holds the computational value of qubit q. Row-major
/// storage so that the index-pair kernels below walk contiguous rows.
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row-major 2x2 single-qubit operator {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

/// Desk-scale register bound. D = 4096 at the bound.
inline constexpr int kMaxQubits = 12;

/// Returns 2^num_qubits; throws std::invalid_argument outside [1, kMaxQubits].
std::size_t dimension_for(int num_qubits);

/// Inverse of dimension_for; throws if dim is not a supported power of two.
int qubits_for(std::size_t dim);

// In-place O(D^2) kernels. They operate on arbitrary square operators (states,
// tangents, observables) and never validate physical invariants.

/// m <- U m U^dagger with U acting on `qubit`.
void conjugate(Matrix& m, int qubit, const Mat2& u);

/// m <- U m U^dagger for U = RotY(angle) on `qubit` (real rotation).
void conjugate_rot_y(Matrix& m, int qubit, double angle);

/// m <- U m U^dagger for U = RotZ(angle) on `qubit` (diagonal phases).
void conjugate_rot_z(Matrix& m, int qubit, double angle);

/// m <- U m U^dagger for U = Hadamard on `qubit`.
void conjugate_hadamard(Matrix& m, int qubit);

/// m <- C m C for the CNOT permutation C (self-inverse).
void conjugate_cnot(Matrix& m, int control, int target);

/// Single-qubit depolarizing channel: m <- (1-p) m + p (Tr_q m) (x) I/2.
///
/// The channel is self-dual, so the same kernel propagates observables.
void depolarize(Matrix& m, int qubit, double p);

/// Whole-register depolarizing channel: m <- (1-p) m + p Tr(m) I/D.
void depolarize_all(Matrix& m, double p);

/// m <- G m - m G with G = -(i/2) Y on `qubit`; the derivative of
/// RotY(a) m RotY(a)^dagger with respect to a, evaluated at the rotated m.
Matrix rot_y_generator_commutator(const Matrix& m, int qubit);

/// Re Tr[a b]. Exact Tr[a b] when both operands are Hermitian.
double trace_product(const Matrix& a, const Matrix& b);

}  // namespace dqkl::qsim
