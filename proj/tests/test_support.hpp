// Copyright 2026 The prens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRENS_TEST_SUPPORT_HPP
#define PRENS_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "prens/matrix.hpp"
#include "prens/numerics.hpp"
#include "prens/rng.hpp"

namespace prens::test {

inline RealMatrix random_real(StreamRng& rng, std::size_t rows, std::size_t cols,
                              double scale = 1.0) {
    RealMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = scale * (2.0 * rng.uniform() - 1.0);
    return m;
}

inline ComplexMatrix random_complex(StreamRng& rng, std::size_t rows, std::size_t cols,
                                    double scale = 1.0) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = scale * Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    return m;
}

inline RealSymmetricMatrix random_symmetric(StreamRng& rng, std::size_t n, double scale = 1.0) {
    RealMatrix m = random_real(rng, n, n, scale);
    return RealSymmetricMatrix(0.5 * (m + m.transpose()));
}

inline RealSymmetricMatrix random_psd(StreamRng& rng, std::size_t n, double scale = 1.0) {
    const RealMatrix b = random_real(rng, n, n, scale);
    return RealSymmetricMatrix(b * b.transpose());
}

/// Positive-definite symmetric part plus a skew part keeps every eigenvalue
/// in the right half plane.
inline RealMatrix random_hurwitz(StreamRng& rng, std::size_t n, double floor = 0.2) {
    const RealMatrix b = random_real(rng, n, n, 1.0);
    RealMatrix spd = b * b.transpose();
    for (std::size_t i = 0; i < n; ++i) spd(i, i) += floor;
    const RealMatrix skew_src = random_real(rng, n, n, 1.0);
    const RealMatrix skew = 0.5 * (skew_src - skew_src.transpose());
    return spd + skew;
}

inline RealMatrix random_orthogonal(StreamRng& rng, std::size_t n) {
    return sym_eig(random_symmetric(rng, n)).vectors;
}

inline ComplexMatrix random_hermitian(StreamRng& rng, std::size_t n, double scale = 1.0) {
    const ComplexMatrix m = random_complex(rng, n, n, scale);
    ComplexMatrix h = m + adjoint(m);
    h *= Complex(0.5, 0.0);
    return h;
}

// ---------------------------------------------------------------------------
// Independent reference implementations (kept free of the library's solver
// internals so they can act as oracles).
// ---------------------------------------------------------------------------

/// Plain Gauss-Jordan solve with partial pivoting.
inline ComplexMatrix gauss_solve(ComplexMatrix a, ComplexMatrix rhs) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(rhs(k, j), rhs(piv, j));
            }
        const Complex d = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= d;
            rhs(k, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const Complex f = a(i, k);
            if (f == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                rhs(i, j) -= f * rhs(k, j);
            }
        }
    }
    return rhs;
}

/// Diagonal Padé exponential of arbitrary order with heavier scaling than
/// the production kernel; used as the doubled-order reference.
inline ComplexMatrix expm_pade_reference(const ComplexMatrix& m, int order = 12) {
    const std::size_t n = m.rows();
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(m(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    while (norm > 0.25) {
        norm *= 0.5;
        ++squarings;
    }
    ComplexMatrix a = m;
    a *= Complex(std::ldexp(1.0, -squarings), 0.0);

    std::vector<double> coeff(static_cast<std::size_t>(order) + 1);
    coeff[0] = 1.0;
    for (int k = 0; k < order; ++k)
        coeff[static_cast<std::size_t>(k) + 1] =
            coeff[static_cast<std::size_t>(k)] * static_cast<double>(order - k) /
            (static_cast<double>(2 * order - k) * static_cast<double>(k + 1));

    ComplexMatrix power = ComplexMatrix::identity(n);
    ComplexMatrix num = ComplexMatrix::identity(n);
    ComplexMatrix den = ComplexMatrix::identity(n);
    num *= Complex(coeff[0], 0.0);
    den *= Complex(coeff[0], 0.0);
    for (int k = 1; k <= order; ++k) {
        power = power * a;
        const double c = coeff[static_cast<std::size_t>(k)];
        num += Complex(c, 0.0) * power;
        den += Complex(k % 2 == 0 ? c : -c, 0.0) * power;
    }
    ComplexMatrix x = gauss_solve(den, num);
    for (int i = 0; i < squarings; ++i) x = x * x;
    return x;
}

} // namespace prens::test

#endif // PRENS_TEST_SUPPORT_HPP
