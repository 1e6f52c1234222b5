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

#ifndef PRENS_NUMERICS_HPP
#define PRENS_NUMERICS_HPP

#include <cstddef>
#include <vector>

#include "prens/matrix.hpp"

namespace prens {

// ---------------------------------------------------------------------------
// Symmetric / Hermitian eigenproblems
// ---------------------------------------------------------------------------

/// Eigendecomposition of a real symmetric matrix: S = V diag(values) Vᵀ.
/// Eigenvalues ascending; column i of `vectors` pairs with values[i].
struct SymmetricEigen {
    RealVector values;
    RealMatrix vectors;
};

/// Cyclic Jacobi eigensolver. Intended for the small matrices that arise
/// here (dim ≲ 50).
SymmetricEigen sym_eig(const RealSymmetricMatrix& s);

/// Eigenvalues only, ascending.
RealVector sym_eigvals(const RealSymmetricMatrix& s);

struct PsdCheck {
    bool is_psd = false;
    double min_eig = 0.0;
};

/// Positive semidefiniteness test: is_psd iff min eigenvalue ≥ -tol.
PsdCheck psd_min_eig(const RealSymmetricMatrix& s, double tol);

/// Eigenvalues (ascending) of a complex Hermitian matrix, via Jacobi with
/// phase-adjusted rotations. Hermiticity is the caller's responsibility;
/// the strictly lower triangle is ignored.
RealVector herm_eigvals(const ComplexMatrix& a);

/// Eigenvalues of a general complex square matrix (Hessenberg reduction +
/// shifted QR). Sized for small matrices (dim ≲ 30); unordered.
ComplexVector eigvals_general(const ComplexMatrix& a);
ComplexVector eigvals_general(const RealMatrix& a);

/// Smallest real part among the eigenvalues of a real square matrix.
double min_real_eigenvalue(const RealMatrix& a);

/// All eigenvalues have real part above `tol` (stability in the convention
/// where the drift enters with a minus sign).
bool is_hurwitz(const RealMatrix& a, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Linear solves and factorizations
// ---------------------------------------------------------------------------

/// Solves K·V + V·Kᵀ = D for symmetric V by vectorizing to the dense linear
/// system (K⊗I + I⊗K)·vec(V) = vec(D). Requires all eigenvalues of K to have
/// real part > 1e-12, else SingularDynamics.
RealSymmetricMatrix lyapunov_solve(const RealMatrix& k, const RealSymmetricMatrix& d);

/// Matrix exponential by scaling-and-squaring with a diagonal Padé
/// approximant of order 6, scaled so the argument norm is ≤ 0.5.
ComplexMatrix expm(const ComplexMatrix& m);

/// Symmetric square root M of a PSD matrix: M·Mᵀ = S. Eigenvalues below
/// -1e-10 raise NotPSD; small negative values are clamped to zero.
RealMatrix sym_sqrt(const RealSymmetricMatrix& s);

// ---------------------------------------------------------------------------
// Nonnegative least squares
// ---------------------------------------------------------------------------

struct NnlsResult {
    RealVector x;                      ///< entrywise nonnegative minimizer
    double residual = 0.0;             ///< ‖A·x − b‖₂
    bool feasible = false;             ///< residual ≤ tol·(1 + ‖b‖₂)
    std::size_t iterations = 0;
    bool iteration_cap_reached = false;
};

/// Lawson–Hanson active-set NNLS on precomputed normal equations, with the
/// final residual evaluated against the original system. Iteration cap is
/// 10·n; hitting it declares the problem infeasible and sets the flag.
NnlsResult nnls_feasibility(const RealMatrix& a, const RealVector& b, double tol);

// ---------------------------------------------------------------------------
// Singular tail of a square complex operator
// ---------------------------------------------------------------------------

/// The two smallest singular values of a square matrix together with the
/// right singular vector of the smallest, computed by shift-regularized
/// inverse iteration on A†A with one deflation step.
struct SingularTail {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    ComplexVector v1;
};

SingularTail smallest_singular_tail(const ComplexMatrix& a);

} // namespace prens

#endif // PRENS_NUMERICS_HPP
