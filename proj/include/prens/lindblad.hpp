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

#ifndef PRENS_LINDBLAD_HPP
#define PRENS_LINDBLAD_HPP

#include <vector>

#include "prens/matrix.hpp"

namespace prens {

/// Markovian generator: Hamiltonian (rate units, ħ absorbed) plus jump
/// operators with rates absorbed as c = √rate × operator, acting as
/// ℒρ = -i[H,ρ] + Σ_c (c ρ c† - ½{c†c, ρ}).
class Lindbladian {
public:
    Lindbladian(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps);

    std::size_t dim() const { return hamiltonian_.rows(); }
    const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<ComplexMatrix>& jumps() const { return jumps_; }

private:
    ComplexMatrix hamiltonian_;
    std::vector<ComplexMatrix> jumps_;
};

/// Unit-trace Hermitian positive-semidefinite operator. Validation
/// tolerances: Hermiticity and trace within 1e-10, minimum eigenvalue down
/// to -1e-8.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix rho);

    std::size_t dim() const { return rho_.rows(); }
    const ComplexMatrix& mat() const { return rho_; }

private:
    ComplexMatrix rho_;
};

/// Action of the generator on an arbitrary (not necessarily normalized)
/// operator.
ComplexMatrix apply_lindbladian(const Lindbladian& gen, const ComplexMatrix& rho);

/// Dense d²×d² matrix of the generator acting on row-major vectorized
/// operators: unvec(M·vec(ρ)) = ℒρ.
ComplexMatrix superoperator_matrix(const Lindbladian& gen);

/// The unique trace-one kernel element of the generator. Uniqueness is
/// checked through the second-smallest singular value of the superoperator
/// (must exceed 10×tol), else NonUniqueSteadyState.
DensityMatrix steady_state(const Lindbladian& gen, double tol = 1e-8);

/// Evolve ρ over an interval τ ≥ 0 through the exponential of the
/// vectorized generator.
DensityMatrix propagate(const Lindbladian& gen, const DensityMatrix& rho, double tau);

/// Row-major vectorization helpers shared by the superoperator consumers.
ComplexVector vec_row_major(const ComplexMatrix& m);
ComplexMatrix unvec_row_major(const ComplexVector& v, std::size_t dim);

} // namespace prens

#endif // PRENS_LINDBLAD_HPP
