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

#include "prens/models.hpp"

#include <cmath>

namespace prens {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_atom_laser(const AtomLaserParams& p) {
    if (!(p.mu > 0)) throw InvalidInput("atom laser: mean occupation must be positive");
    if (!(p.kappa > 0)) throw InvalidInput("atom laser: damping rate must be positive");
    if (p.chi < 0) throw InvalidInput("atom laser: interaction must be nonnegative");
    if (p.nu < 0) throw InvalidInput("atom laser: excess phase diffusion must be nonnegative");
}

/// Annihilation operator on a truncated number basis.
ComplexMatrix annihilation(std::size_t dim) {
    ComplexMatrix a(dim, dim);
    for (std::size_t n = 1; n < dim; ++n)
        a(n - 1, n) = Complex(std::sqrt(static_cast<double>(n)), 0.0);
    return a;
}

/// Isometric raising operator Σ_n |n+1><n| (gain without the bosonic √n
/// enhancement, the ideal-laser pump).
ComplexMatrix isometric_raising(std::size_t dim) {
    ComplexMatrix e(dim, dim);
    for (std::size_t n = 0; n + 1 < dim; ++n) e(n + 1, n) = Complex(1.0, 0.0);
    return e;
}

} // namespace

LinearizedAtomLaser atom_laser_linearized(const AtomLaserParams& p) {
    require_atom_laser(p);
    RealMatrix k(2, 2);
    k(0, 0) = p.kappa;
    k(1, 0) = p.kappa * p.chi;
    RealMatrix d(2, 2);
    d(0, 0) = 2.0 * p.kappa;
    d(1, 1) = p.kappa * (2.0 + p.nu);
    return LinearizedAtomLaser{LinearDynamics(std::move(k), RealSymmetricMatrix(std::move(d))),
                               RealSymmetricMatrix::identity(2)};
}

Lindbladian atom_laser_fock(const AtomLaserParams& p) {
    require_atom_laser(p);
    if (p.nu != 0.0)
        throw Unsupported("atom_laser_fock: excess phase diffusion enters only the linearized "
                          "model; use nu = 0 here");
    const std::size_t dim = p.nmax + 1;
    if (dim < 2) throw InvalidInput("atom_laser_fock: truncation must allow at least two levels");

    ComplexMatrix h(dim, dim);
    const double interaction = p.kappa * p.chi / (4.0 * p.mu);
    for (std::size_t n = 0; n < dim; ++n) {
        const double nn = static_cast<double>(n);
        h(n, n) = Complex(interaction * nn * (nn - 1.0), 0.0);
    }

    std::vector<ComplexMatrix> jumps;
    jumps.push_back(Complex(std::sqrt(p.kappa * p.mu), 0.0) * isometric_raising(dim));
    jumps.push_back(Complex(std::sqrt(p.kappa), 0.0) * annihilation(dim));
    return Lindbladian(std::move(h), std::move(jumps));
}

Lindbladian two_level_thermal(const TwoLevelParams& p) {
    if (p.gamma_up < 0) throw InvalidInput("two_level_thermal: absorption rate must be >= 0");
    if (!(p.gamma_down > 0)) throw InvalidInput("two_level_thermal: emission rate must be > 0");

    ComplexMatrix lower(2, 2); // |g><e|
    lower(0, 1) = Complex(1.0, 0.0);
    ComplexMatrix raise(2, 2); // |e><g|
    raise(1, 0) = Complex(1.0, 0.0);

    std::vector<ComplexMatrix> jumps;
    jumps.push_back(Complex(std::sqrt(p.gamma_down), 0.0) * lower);
    jumps.push_back(Complex(std::sqrt(p.gamma_up), 0.0) * raise);
    return Lindbladian(ComplexMatrix(2, 2), std::move(jumps));
}

PureState coherent_state(Complex alpha, std::size_t dim) {
    if (dim == 0) throw InvalidInput("coherent_state: dimension must be positive");
    ComplexVector amp(dim);
    amp[0] = Complex(1.0, 0.0);
    for (std::size_t n = 1; n < dim; ++n)
        amp[n] = amp[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return PureState::normalized(std::move(amp));
}

DiscreteEnsemble coherent_phase_ensemble(double mu, std::size_t num_phases, std::size_t dim) {
    if (num_phases < 2)
        throw InvalidInput("coherent_phase_ensemble: need at least two phases");
    if (!(mu > 0)) throw InvalidInput("coherent_phase_ensemble: mean occupation must be positive");
    const double radius = std::sqrt(mu);
    std::vector<PureState> states;
    states.reserve(num_phases);
    for (std::size_t m = 0; m < num_phases; ++m) {
        const double phi = kTwoPi * static_cast<double>(m) / static_cast<double>(num_phases);
        states.push_back(coherent_state(radius * Complex(std::cos(phi), std::sin(phi)), dim));
    }
    RealVector weights(num_phases, 1.0 / static_cast<double>(num_phases));
    return DiscreteEnsemble(std::move(states), std::move(weights));
}

DiscreteEnsemble number_poisson_ensemble(double mu, std::size_t dim) {
    if (dim < 2) throw InvalidInput("number_poisson_ensemble: dimension must be at least two");
    if (mu < 0) throw InvalidInput("number_poisson_ensemble: mean must be nonnegative");
    RealVector weights(dim);
    weights[0] = std::exp(-mu);
    for (std::size_t n = 1; n < dim; ++n)
        weights[n] = weights[n - 1] * mu / static_cast<double>(n);
    double total = 0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;

    std::vector<PureState> states;
    states.reserve(dim);
    for (std::size_t n = 0; n < dim; ++n) states.push_back(PureState::basis(n, dim));
    return DiscreteEnsemble(std::move(states), std::move(weights));
}

double chi_parameter(const ChiPhysicalParams& p) {
    if (!(p.m > 0) || !(p.hbar > 0) || !(p.kappa > 0) || !(p.mu > 0) ||
        !(p.density_integral > 0))
        throw InvalidInput("chi_parameter: mass, hbar, rate, occupation and density integral "
                           "must be positive");
    return 8.0 * M_PI * p.mu * p.hbar * p.a_s / (p.kappa * p.m) * p.density_integral;
}

std::vector<std::string> atom_laser_warnings(const AtomLaserParams& p) {
    std::vector<std::string> warnings;
    const double needed = std::ceil(p.mu + 6.0 * std::sqrt(p.mu));
    if (static_cast<double>(p.nmax) < needed)
        warnings.push_back("Fock truncation nmax = " + std::to_string(p.nmax) +
                           " is below mu + 6*sqrt(mu) = " + std::to_string(needed) +
                           "; truncation error may dominate");
    // Poisson tail mass beyond nmax
    double w = std::exp(-p.mu);
    double below = 0;
    for (std::size_t n = 0; n <= p.nmax; ++n) {
        below += w;
        w *= p.mu / static_cast<double>(n + 1);
    }
    const double tail = std::max(0.0, 1.0 - below);
    if (tail > 1e-10)
        warnings.push_back("Poisson tail mass beyond nmax is " + std::to_string(tail) +
                           " (> 1e-10)");
    return warnings;
}

std::vector<std::string> coherent_state_warnings(Complex alpha, std::size_t dim) {
    std::vector<std::string> warnings;
    if (std::norm(alpha) > static_cast<double>(dim) / 4.0)
        warnings.push_back("coherent amplitude |alpha|^2 exceeds dim/4; truncation error may be "
                           "significant");
    return warnings;
}

} // namespace prens
