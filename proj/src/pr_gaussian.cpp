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

#include "prens/pr_gaussian.hpp"

#include <cmath>

#include "prens/numerics.hpp"

namespace prens {

LinearDynamics::LinearDynamics(RealMatrix drift, RealSymmetricMatrix diffusion)
    : drift_(std::move(drift)), diffusion_(std::move(diffusion)) {
    if (!drift_.square()) throw InvalidInput("LinearDynamics: drift must be square");
    if (drift_.rows() != diffusion_.dim())
        throw InvalidInput("LinearDynamics: drift/diffusion dimension mismatch");
    if (drift_.rows() % 2 != 0)
        throw InvalidInput("LinearDynamics: phase-space dimension must be even");
    if (!drift_.all_finite()) throw InvalidInput("LinearDynamics: non-finite drift entries");
    if (!psd_min_eig(diffusion_, 1e-10).is_psd)
        throw NotPSD("LinearDynamics: diffusion matrix is not PSD");
}

GaussianEnsemble::GaussianEnsemble(RealSymmetricMatrix covariance)
    : covariance_(std::move(covariance)) {
    if (!psd_min_eig(covariance_, 1e-10).is_psd)
        throw NotPSD("GaussianEnsemble: covariance is not PSD");
}

RealSymmetricMatrix excess_diffusion(const LinearDynamics& dyn, const RealSymmetricMatrix& v) {
    if (v.dim() != dyn.dim())
        throw InvalidInput("excess_diffusion: covariance dimension mismatch");
    const RealMatrix& k = dyn.drift();
    RealMatrix b = dyn.diffusion().mat() - k * v.mat() - v.mat() * k.transpose();
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = i + 1; j < b.cols(); ++j) {
            const double avg = 0.5 * (b(i, j) + b(j, i));
            b(i, j) = avg;
            b(j, i) = avg;
        }
    return RealSymmetricMatrix(std::move(b));
}

GaussianPRReport check_pr_gaussian(const LinearDynamics& dyn, const RealSymmetricMatrix& v,
                                   double tol) {
    GaussianPRReport report{excess_diffusion(dyn, v), 0.0, GaussianDecision::NOT_PR,
                            std::nullopt, std::nullopt, std::nullopt, {}};
    const PsdCheck psd = psd_min_eig(report.b_v, tol);
    report.min_eig_b = psd.min_eig;
    report.decision = psd.is_psd ? GaussianDecision::PR : GaussianDecision::NOT_PR;

    // Purity of the members: det = 1 per 2x2 mode block saturates the
    // uncertainty floor in these units.
    bool pure = true;
    for (std::size_t m = 0; m < dyn.modes(); ++m) {
        const double det = v(2 * m, 2 * m) * v(2 * m + 1, 2 * m + 1) -
                           v(2 * m, 2 * m + 1) * v(2 * m + 1, 2 * m);
        if (std::abs(det - 1.0) > 1e-8) pure = false;
    }
    report.notes.push_back(pure ? "ensemble covariance saturates det V = 1 per mode (pure members)"
                                : "ensemble covariance does not saturate det V = 1 per mode");

    if (is_hurwitz(dyn.drift())) {
        const RealSymmetricMatrix v_ss = lyapunov_solve(dyn.drift(), dyn.diffusion());
        RealMatrix u = v_ss.mat() - v.mat();
        report.v_ss = v_ss;
        report.u = RealSymmetricMatrix(std::move(u));
        report.representable = psd_min_eig(*report.u, tol).is_psd;
        if (!*report.representable)
            report.notes.push_back("weight covariance V_ss - V is not PSD: no uniform Gaussian "
                                   "ensemble with this member covariance represents the "
                                   "stationary state");
    } else {
        report.notes.push_back(
            psd.is_psd
                ? "drift is not Hurwitz: no stationary weight distribution exists; only the "
                  "necessary condition on the excess diffusion was tested and it is satisfied"
                : "drift is not Hurwitz: no stationary weight distribution exists; the necessary "
                  "condition on the excess diffusion already fails");
    }
    return report;
}

RealSymmetricMatrix weight_covariance(const LinearDynamics& dyn, const RealSymmetricMatrix& v) {
    if (v.dim() != dyn.dim())
        throw InvalidInput("weight_covariance: covariance dimension mismatch");
    if (!is_hurwitz(dyn.drift()))
        throw SingularDynamics("weight_covariance: drift has an eigenvalue with real part <= 0");

    const RealSymmetricMatrix v_ss = lyapunov_solve(dyn.drift(), dyn.diffusion());
    RealSymmetricMatrix u(v_ss.mat() - v.mat());

    // U must satisfy the same fluctuation relation with B_V as V_ss does with D.
    const RealSymmetricMatrix b_v = excess_diffusion(dyn, v);
    const RealMatrix res =
        dyn.drift() * u.mat() + u.mat() * dyn.drift().transpose() - b_v.mat();
    if (res.frobenius_norm() > 1e-9 * (1.0 + b_v.mat().frobenius_norm()))
        throw Error("weight_covariance: consistency residual exceeds tolerance");
    return u;
}

OuStep ou_step_distribution(const LinearDynamics& dyn, const RealSymmetricMatrix& v,
                            const RealVector& mu, double dt) {
    if (mu.size() != dyn.dim())
        throw InvalidInput("ou_step_distribution: mean dimension mismatch");
    double knorm = 0;
    for (std::size_t i = 0; i < dyn.dim(); ++i) {
        double row = 0;
        for (std::size_t j = 0; j < dyn.dim(); ++j) row += std::abs(dyn.drift()(i, j));
        knorm = std::max(knorm, row);
    }
    if (!(dt > 0) || dt * knorm > 0.1)
        throw InvalidInput("ou_step_distribution: dt must be positive with dt*|K| <= 0.1");

    const RealVector kmu = dyn.drift() * mu;
    OuStep step{mu, excess_diffusion(dyn, v)};
    for (std::size_t i = 0; i < mu.size(); ++i) step.mean[i] = mu[i] - kmu[i] * dt;
    step.cov = RealSymmetricMatrix(step.cov.mat() * dt);
    return step;
}

} // namespace prens
