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

#include "dqkl/qsim/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dqkl::qsim {

namespace {

inline std::size_t mask(int qubit) { return std::size_t{1} << qubit; }

}  // namespace

std::size_t dimension_for(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                    " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    return std::size_t{1} << num_qubits;
}

int qubits_for(std::size_t dim) {
    for (int n = 1; n <= kMaxQubits; ++n) {
        if (dim == (std::size_t{1} << n)) return n;
    }
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a supported power of two");
}

void conjugate(Matrix& m, int qubit, const Mat2& u) {
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t b = mask(qubit);
    Complex* data = m.data();
    // Left: rows (r0, r1) mix through U.
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & b) continue;
        Complex* row0 = data + r0 * d;
        Complex* row1 = data + (r0 | b) * d;
        for (std::size_t c = 0; c < d; ++c) {
            const Complex a = row0[c];
            const Complex z = row1[c];
            row0[c] = u[0] * a + u[1] * z;
            row1[c] = u[2] * a + u[3] * z;
        }
    }
    // Right: columns (c0, c1) mix through U^dagger.
    const Complex v00 = std::conj(u[0]), v01 = std::conj(u[1]);
    const Complex v10 = std::conj(u[2]), v11 = std::conj(u[3]);
    for (std::size_t r = 0; r < d; ++r) {
        Complex* row = data + r * d;
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & b) continue;
            const Complex a = row[c0];
            const Complex z = row[c0 | b];
            row[c0] = a * v00 + z * v01;
            row[c0 | b] = a * v10 + z * v11;
        }
    }
}

void conjugate_rot_y(Matrix& m, int qubit, double angle) {
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t b = mask(qubit);
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    Complex* data = m.data();
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & b) continue;
        Complex* row0 = data + r0 * d;
        Complex* row1 = data + (r0 | b) * d;
        for (std::size_t k = 0; k < d; ++k) {
            const Complex a = row0[k];
            const Complex z = row1[k];
            row0[k] = c * a - s * z;
            row1[k] = s * a + c * z;
        }
    }
    for (std::size_t r = 0; r < d; ++r) {
        Complex* row = data + r * d;
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & b) continue;
            const Complex a = row[c0];
            const Complex z = row[c0 | b];
            row[c0] = c * a - s * z;
            row[c0 | b] = s * a + c * z;
        }
    }
}

void conjugate_rot_z(Matrix& m, int qubit, double angle) {
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t b = mask(qubit);
    // U = diag(e^{-ia/2}, e^{ia/2}): entry (r, c) gains e^{-ia} for bits (0, 1),
    // e^{ia} for bits (1, 0), and is unchanged when the bits agree.
    const Complex lower = std::polar(1.0, -angle);  // bit_r = 0, bit_c = 1
    const Complex upper = std::conj(lower);         // bit_r = 1, bit_c = 0
    Complex* data = m.data();
    for (std::size_t r = 0; r < d; ++r) {
        Complex* row = data + r * d;
        const Complex phase = (r & b) ? upper : lower;
        for (std::size_t c = 0; c < d; ++c) {
            if (((r ^ c) & b) != 0) row[c] *= phase;
        }
    }
}

void conjugate_hadamard(Matrix& m, int qubit) {
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t b = mask(qubit);
    const double h = 1.0 / std::sqrt(2.0);
    Complex* data = m.data();
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & b) continue;
        Complex* row0 = data + r0 * d;
        Complex* row1 = data + (r0 | b) * d;
        for (std::size_t k = 0; k < d; ++k) {
            const Complex a = row0[k];
            const Complex z = row1[k];
            row0[k] = h * (a + z);
            row1[k] = h * (a - z);
        }
    }
    for (std::size_t r = 0; r < d; ++r) {
        Complex* row = data + r * d;
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & b) continue;
            const Complex a = row[c0];
            const Complex z = row[c0 | b];
            row[c0] = h * (a + z);
            row[c0 | b] = h * (a - z);
        }
    }
}

void conjugate_cnot(Matrix& m, int control, int target) {
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t cb = mask(control);
    const std::size_t tb = mask(target);
    // Swap the row pairs, then the column pairs, that differ in the target bit
    // with the control bit set.
    for (std::size_t r = 0; r < d; ++r) {
        if ((r & cb) && !(r & tb)) m.row(r).swap(m.row(r | tb));
    }
    Complex* data = m.data();
    for (std::size_t r = 0; r < d; ++r) {
        Complex* row = data + r * d;
        for (std::size_t c = 0; c < d; ++c) {
            if ((c & cb) && !(c & tb)) std::swap(row[c], row[c | tb]);
        }
    }
}

void depolarize(Matrix& m, int qubit, double p) {
    if (p == 0.0) return;
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t b = mask(qubit);
    const double keep = 1.0 - p;
    Complex* data = m.data();
    for (std::size_t r0 = 0; r0 < d; ++r0) {
        if (r0 & b) continue;
        Complex* row0 = data + r0 * d;
        Complex* row1 = data + (r0 | b) * d;
        for (std::size_t c0 = 0; c0 < d; ++c0) {
            if (c0 & b) continue;
            const std::size_t c1 = c0 | b;
            const Complex mixed = 0.5 * p * (row0[c0] + row1[c1]);
            row0[c0] = keep * row0[c0] + mixed;
            row1[c1] = keep * row1[c1] + mixed;
            row0[c1] *= keep;
            row1[c0] *= keep;
        }
    }
}

void depolarize_all(Matrix& m, double p) {
    if (p == 0.0) return;
    const Complex shift = p * m.trace() / static_cast<double>(m.rows());
    m *= (1.0 - p);
    m.diagonal().array() += shift;
}

Matrix rot_y_generator_commutator(const Matrix& m, int qubit) {
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t b = mask(qubit);
    Matrix out(m.rows(), m.cols());
    // G = [[0, -1/2], [1/2, 0]]; out = G m - m G.
    for (std::size_t r = 0; r < d; ++r) {
        const bool rbit = r & b;
        const std::size_t rp = r ^ b;
        const double gl = rbit ? 0.5 : -0.5;
        for (std::size_t c = 0; c < d; ++c) {
            const bool cbit = c & b;
            const std::size_t cp = c ^ b;
            // (G m)[r][c] = G[rbit][!rbit] m[rp][c]; (m G)[r][c] = m[r][cp] G[!cbit][cbit].
            const double gr = cbit ? -0.5 : 0.5;
            out(r, c) = gl * m(rp, c) - gr * m(r, cp);
        }
    }
    return out;
}

double trace_product(const Matrix& a, const Matrix& b) {
    return a.cwiseProduct(b.transpose()).sum().real();
}

}  // namespace dqkl::qsim
