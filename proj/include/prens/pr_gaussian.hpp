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

#ifndef PRENS_PR_GAUSSIAN_HPP
#define PRENS_PR_GAUSSIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "prens/matrix.hpp"

namespace prens {

/// Phase-space drift/diffusion pair for linear dynamics in 2n quadrature
/// coordinates (ħ = 2 units, coherent-state covariance = identity). D must
/// be PSD within 1e-10; dimensions must be even and equal.
class LinearDynamics {
public:
    LinearDynamics(RealMatrix drift, RealSymmetricMatrix diffusion);

    std::size_t dim() const { return drift_.rows(); }
    std::size_t modes() const { return drift_.rows() / 2; }
    const RealMatrix& drift() const { return drift_; }
    const RealSymmetricMatrix& diffusion() const { return diffusion_; }

private:
    RealMatrix drift_;
    RealSymmetricMatrix diffusion_;
};

/// Common covariance shared by every member of a uniform Gaussian ensemble.
class GaussianEnsemble {
public:
    explicit GaussianEnsemble(RealSymmetricMatrix covariance);

    const RealSymmetricMatrix& covariance() const { return covariance_; }

private:
    RealSymmetricMatrix covariance_;
};

enum class GaussianDecision { PR, NOT_PR };

struct GaussianPRReport {
    RealSymmetricMatrix b_v;                      ///< excess diffusion D - KV - VKᵀ
    double min_eig_b = 0.0;
    GaussianDecision decision = GaussianDecision::NOT_PR;
    std::optional<RealSymmetricMatrix> v_ss;      ///< stationary covariance (Hurwitz drift only)
    std::optional<RealSymmetricMatrix> u;         ///< weight covariance V_ss - V
    std::optional<bool> representable;            ///< U PSD
    std::vector<std::string> notes;
};

/// Excess diffusion left for the ensemble means: B_V = D - K·V - V·Kᵀ.
RealSymmetricMatrix excess_diffusion(const LinearDynamics& dyn, const RealSymmetricMatrix& v);

/// Full criterion: PSD test on B_V decides PR; when the drift is Hurwitz the
/// report also carries V_ss, U = V_ss - V and whether U is a valid (PSD)
/// weight covariance. A non-Hurwitz drift limits the test to the necessary
/// condition on B_V, recorded in the notes.
GaussianPRReport check_pr_gaussian(const LinearDynamics& dyn, const RealSymmetricMatrix& v,
                                   double tol = 1e-10);

/// Stationary covariance of the member means, U = V_ss - V; also checks the
/// defining relation K·U + U·Kᵀ = B_V. Requires a Hurwitz drift.
RealSymmetricMatrix weight_covariance(const LinearDynamics& dyn, const RealSymmetricMatrix& v);

struct OuStep {
    RealVector mean;
    RealSymmetricMatrix cov;
};

/// One-step transition law of the member means: mean μ - K·μ·dt and
/// covariance B_V·dt. Requires dt·‖K‖ ≤ 0.1.
OuStep ou_step_distribution(const LinearDynamics& dyn, const RealSymmetricMatrix& v,
                            const RealVector& mu, double dt);

} // namespace prens

#endif // PRENS_PR_GAUSSIAN_HPP
