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

#ifndef PRENS_MODELS_HPP
#define PRENS_MODELS_HPP

#include <string>
#include <vector>

#include "prens/ensemble.hpp"
#include "prens/lindblad.hpp"
#include "prens/pr_gaussian.hpp"

namespace prens {

/// Single-mode damped/pumped condensate parameters. `mu` is the mean
/// occupation, `kappa` the damping rate, `chi` the dimensionless
/// interaction strength, `nu` the excess phase diffusion (linearized model
/// only) and `nmax` the Fock-space truncation (Fock model only, d = nmax+1).
struct AtomLaserParams {
    double mu = 1.0;
    double kappa = 1.0;
    double chi = 0.0;
    double nu = 0.0;
    std::size_t nmax = 0;
};

/// Thermal two-level atom: absorption rate gamma_up >= 0, emission rate
/// gamma_down > 0. Basis order is (ground, excited).
struct TwoLevelParams {
    double gamma_up = 0.0;
    double gamma_down = 1.0;
};

/// Physical inputs for the interaction parameter: s-wave scattering length
/// a_s (any sign), atomic mass m, action constant hbar, damping rate kappa,
/// mean occupation mu, and the mode-density integral ∫|ψ(r)|⁴ d³r.
struct ChiPhysicalParams {
    double a_s = 0.0;
    double m = 1.0;
    double hbar = 1.0;
    double kappa = 1.0;
    double mu = 1.0;
    double density_integral = 1.0;
};

struct LinearizedAtomLaser {
    LinearDynamics dynamics;
    RealSymmetricMatrix coherent_covariance; ///< identity in ħ = 2 units
};

/// Linearized amplitude/phase dynamics about the mean field:
/// K = κ[[1, 0], [χ, 0]], D = κ[[2, 0], [0, 2+ν]].
LinearizedAtomLaser atom_laser_linearized(const AtomLaserParams& p);

/// Fock-space model on d = nmax+1 levels: isometric-raising gain at rate κμ,
/// loss through the annihilation operator at rate κ, and the number-diagonal
/// interaction Hamiltonian (κχ/4μ)·a†²a². Only ν = 0 is supported.
Lindbladian atom_laser_fock(const AtomLaserParams& p);

/// Jumps √γ↓·σ₋ and √γ↑·σ₊ with zero Hamiltonian.
Lindbladian two_level_thermal(const TwoLevelParams& p);

/// Truncated coherent state with amplitudes ∝ αⁿ/√(n!), renormalized.
PureState coherent_state(Complex alpha, std::size_t dim);

/// M coherent states √μ·e^{2πi m/M} with equal weights. Requires M ≥ 2.
DiscreteEnsemble coherent_phase_ensemble(double mu, std::size_t num_phases, std::size_t dim);

/// Number states with Poisson(μ) weights renormalized over n < dim.
DiscreteEnsemble number_poisson_ensemble(double mu, std::size_t dim);

/// χ = 8π μ ħ a_s / (κ m) · ∫|ψ(r)|⁴ d³r.
double chi_parameter(const ChiPhysicalParams& p);

/// Non-fatal validity diagnostics (truncation too small, Poisson tail mass,
/// amplitude too large for the requested dimension). The constructors above
/// stay silent; callers surface these where appropriate.
std::vector<std::string> atom_laser_warnings(const AtomLaserParams& p);
std::vector<std::string> coherent_state_warnings(Complex alpha, std::size_t dim);

} // namespace prens

#endif // PRENS_MODELS_HPP
