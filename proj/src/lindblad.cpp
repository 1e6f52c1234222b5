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

#include "prens/lindblad.hpp"

#include <cmath>

#include "prens/numerics.hpp"

namespace prens {

namespace {

void require_hermitian(const ComplexMatrix& m, double rel_tol, const char* what) {
    const double scale = std::max(m.max_abs(), 1.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > rel_tol * scale)
                throw InvalidInput(std::string(what) + ": matrix is not Hermitian within tolerance");
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = avg;
            out(j, i) = std::conj(avg);
        }
    }
    return out;
}

} // namespace

Lindbladian::Lindbladian(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
    if (!hamiltonian_.square())
        throw InvalidInput("Lindbladian: Hamiltonian must be square");
    if (!hamiltonian_.all_finite())
        throw InvalidInput("Lindbladian: Hamiltonian has non-finite entries");
    require_hermitian(hamiltonian_, 1e-12, "Lindbladian");
    for (const auto& c : jumps_) {
        if (c.rows() != dim() || c.cols() != dim())
            throw InvalidInput("Lindbladian: jump operator dimension mismatch");
        if (!c.all_finite())
            throw InvalidInput("Lindbladian: jump operator has non-finite entries");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (!rho_.square()) throw InvalidInput("DensityMatrix: must be square");
    if (!rho_.all_finite()) throw InvalidInput("DensityMatrix: non-finite entries");
    require_hermitian(rho_, 1e-10, "DensityMatrix");
    const Complex tr = rho_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10)
        throw InvalidInput("DensityMatrix: trace differs from one");
    const RealVector eigs = herm_eigvals(rho_);
    if (eigs.front() < -1e-8)
        throw InvalidInput("DensityMatrix: negative eigenvalue beyond tolerance");
}

ComplexMatrix apply_lindbladian(const Lindbladian& gen, const ComplexMatrix& rho) {
    const std::size_t d = gen.dim();
    if (rho.rows() != d || rho.cols() != d)
        throw InvalidInput("apply_lindbladian: state dimension mismatch");

    const Complex minus_i(0.0, -1.0);
    const ComplexMatrix& h = gen.hamiltonian();
    ComplexMatrix out = minus_i * (h * rho - rho * h);
    for (const auto& c : gen.jumps()) {
        const ComplexMatrix cdag = adjoint(c);
        const ComplexMatrix cdc = cdag * c;
        out += c * rho * cdag;
        out -= Complex(0.5, 0.0) * (cdc * rho + rho * cdc);
    }
    return out;
}

ComplexMatrix superoperator_matrix(const Lindbladian& gen) {
    const std::size_t d = gen.dim();
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const ComplexMatrix& h = gen.hamiltonian();

    // Row-major vec: vec(AρB) = (A ⊗ Bᵀ) vec(ρ).
    ComplexMatrix sup = Complex(0.0, -1.0) * (kron(h, id) - kron(id, h.transpose()));
    for (const auto& c : gen.jumps()) {
        const ComplexMatrix cdc = adjoint(c) * c;
        sup += kron(c, conjugate(c));
        sup -= Complex(0.5, 0.0) * kron(cdc, id);
        sup -= Complex(0.5, 0.0) * kron(id, cdc.transpose());
    }
    return sup;
}

ComplexVector vec_row_major(const ComplexMatrix& m) {
    ComplexVector v(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
    return v;
}

ComplexMatrix unvec_row_major(const ComplexVector& v, std::size_t dim) {
    if (v.size() != dim * dim) throw InvalidInput("unvec: length is not dim squared");
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
    return m;
}

DensityMatrix steady_state(const Lindbladian& gen, double tol) {
    const std::size_t d = gen.dim();
    const ComplexMatrix sup = superoperator_matrix(gen);
    const SingularTail tail = smallest_singular_tail(sup);
    if (tail.sigma2 <= 10.0 * tol)
        throw NonUniqueSteadyState("steady_state: generator kernel is not one-dimensional");

    ComplexMatrix rho = hermitize(unvec_row_major(tail.v1, d));
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-12)
        throw NonUniqueSteadyState("steady_state: kernel vector is traceless");
    rho *= Complex(1.0 / tr, 0.0);

    const double residual = apply_lindbladian(gen, rho).frobenius_norm();
    if (residual > tol)
        throw Error("steady_state: fixed-point residual " + std::to_string(residual) +
                    " exceeds tolerance");
    return DensityMatrix(rho);
}

DensityMatrix propagate(const Lindbladian& gen, const DensityMatrix& rho, double tau) {
    if (!(tau >= 0)) throw InvalidInput("propagate: time must be nonnegative");
    if (tau == 0.0) return rho;

    const std::size_t d = gen.dim();
    ComplexMatrix sup = superoperator_matrix(gen);
    sup *= Complex(tau, 0.0);
    const ComplexMatrix evol = expm(sup);
    const ComplexVector out = evol * vec_row_major(rho.mat());

    ComplexMatrix evolved = hermitize(unvec_row_major(out, d));
    const double tr = evolved.trace().real();
    evolved *= Complex(1.0 / tr, 0.0);
    return DensityMatrix(evolved);
}

} // namespace prens
