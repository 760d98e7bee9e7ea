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

#include "dqkl/qsim/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace dqkl::qsim {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " probability " + std::to_string(p) +
                                    " outside [0, 1]");
    }
}

DensityMatrix DensityMatrix::zero_state(int num_qubits) {
    const auto d = dimension_for(num_qubits);
    Matrix m = Matrix::Zero(d, d);
    m(0, 0) = 1.0;
    return DensityMatrix(std::move(m), num_qubits);
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const auto d = dimension_for(num_qubits);
    Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
    return DensityMatrix(std::move(m), num_qubits);
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, const StateTolerance& tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
    const int n = qubits_for(static_cast<std::size_t>(m.rows()));
    DensityMatrix rho(std::move(m), n);
    try {
        rho.check_invariants(tol);
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(e.what());
    }
    return rho;
}

double DensityMatrix::purity() const { return trace_product(m_, m_); }

double DensityMatrix::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::check_invariants(const StateTolerance& tol) const {
    const double herm = hermiticity_error();
    if (herm > tol.hermiticity) {
        throw std::logic_error("density matrix not Hermitian: error " + std::to_string(herm));
    }
    const Complex tr = trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw std::logic_error("density matrix trace " + std::to_string(tr.real()) + " != 1");
    }
    const double lo = min_eigenvalue();
    if (lo < tol.min_eigenvalue) {
        throw std::logic_error("density matrix not PSD: min eigenvalue " + std::to_string(lo));
    }
    const double pur = purity();
    const double d = static_cast<double>(dim());
    if (pur < 1.0 / d - tol.purity || pur > 1.0 + tol.purity) {
        throw std::logic_error("density matrix purity " + std::to_string(pur) + " out of range");
    }
}

DensityMatrix apply_gate(const DensityMatrix& rho, const Gate& gate) {
    validate(gate, rho.num_qubits());
    Matrix m = rho.m_;
    apply_in_place(m, gate);
    return DensityMatrix(std::move(m), rho.num_qubits());
}

DensityMatrix apply_depolarizing_local(const DensityMatrix& rho, int qubit, double p) {
    if (qubit < 0 || qubit >= rho.num_qubits()) {
        throw std::out_of_range("depolarizing qubit " + std::to_string(qubit) + " out of range");
    }
    check_probability(p, "local depolarizing");
    Matrix m = rho.m_;
    depolarize(m, qubit, p);
    return DensityMatrix(std::move(m), rho.num_qubits());
}

DensityMatrix apply_depolarizing_global(const DensityMatrix& rho, double p) {
    check_probability(p, "global depolarizing");
    Matrix m = rho.m_;
    depolarize_all(m, p);
    return DensityMatrix(std::move(m), rho.num_qubits());
}

double projector_probability(const DensityMatrix& rho) {
    return std::clamp(rho(0, 0).real(), 0.0, 1.0);
}

}  // namespace dqkl::qsim
