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

#ifndef PRENS_PR_DISCRETE_HPP
#define PRENS_PR_DISCRETE_HPP

#include <optional>
#include <string>
#include <vector>

#include "prens/ensemble.hpp"
#include "prens/lindblad.hpp"
#include "prens/matrix.hpp"

namespace prens {

/// K×K jump rates between ensemble members: γ(k, j) is the rate from member
/// k to member j. Off-diagonal entries are nonnegative; the diagonal is
/// identically zero (the loss term is implicit).
class RateMatrix {
public:
    explicit RateMatrix(RealMatrix rates);

    static RateMatrix zero(std::size_t members) { return RateMatrix(RealMatrix(members, members)); }

    std::size_t members() const { return rates_.rows(); }
    double operator()(std::size_t from, std::size_t to) const { return rates_(from, to); }
    const RealMatrix& mat() const { return rates_; }

    /// Total outflow rate Σ_j γ(k, j).
    double total_rate(std::size_t from) const;
    double max_rate() const;       ///< largest single transition rate
    double max_total_rate() const; ///< largest outflow rate over members

private:
    RealMatrix rates_;
};

/// Column-stochastic finite-horizon transition probabilities w(j, k):
/// probability that member k is found as member j after the horizon.
class TransitionMatrix {
public:
    TransitionMatrix(RealMatrix w, double horizon);

    std::size_t members() const { return w_.rows(); }
    double operator()(std::size_t to, std::size_t from) const { return w_(to, from); }
    const RealMatrix& mat() const { return w_; }
    double horizon() const { return horizon_; }

private:
    RealMatrix w_;
    double horizon_;
};

enum class PRDecision { PR, NOT_PR, NOT_REPRESENTING };

std::string to_string(PRDecision decision);

struct PRVerdict {
    PRDecision decision = PRDecision::NOT_PR;
    double representation_distance = 0.0;
    /// Relative joint residual ‖A·γ − b‖ / (1 + ‖b‖) of the stacked
    /// generator + stationarity system.
    double feasibility_residual = 0.0;
    /// Worst violation of the classical balance condition by the certificate.
    double stationarity_residual = 0.0;
    std::optional<RateMatrix> certificate;
    std::vector<std::string> notes;
};

struct DiscreteCheckOptions {
    double representation_tol = 1e-8;
    double feasibility_tol = 1e-8;
    /// Number of top basis levels whose generator constraints are dropped
    /// (truncated-Fock guard; those matrix elements are corrupted by the
    /// cutoff, not by the ensemble).
    std::size_t exclude_top_levels = 0;
};

struct JumpRatesResult {
    RateMatrix rates;
    double residual = 0.0; ///< max over members of the relative generator residual
    bool feasible = false;
};

/// Per-member nonnegative fit of ℒΠ_k = Σ_{j≠k} γ_kj (Π_j − Π_k), assembled
/// through the Frobenius-isometric real vectorization of Hermitian matrices.
JumpRatesResult jump_rates(const Lindbladian& gen, const DiscreteEnsemble& ensemble, double tol);
JumpRatesResult jump_rates(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                           const DiscreteCheckOptions& options);

/// max_j |Σ_k ℘_k γ_kj − ℘_j Σ_k γ_jk|: the weights as a stationary point of
/// the classical master equation generated by γ.
double stationarity_residual(const RateMatrix& rates, const RealVector& weights);

/// Spectral gap of the classical generator built from the rates: the
/// slowest nonzero relaxation rate. This is the right scale for simulation
/// horizons; the maximum outflow rate can be dominated by rarely-visited
/// members. Returns 0 when the chain has no relaxing mode.
double mixing_rate(const RateMatrix& rates);

/// Full decision: representation first, then a single joint nonnegative
/// least-squares solve over all rates covering both the generator
/// constraints and weight stationarity. Solving jointly matters when member
/// projectors are linearly dependent (solve-then-check can miss certificates).
PRVerdict check_pr_discrete(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                            const DensityMatrix& rho_ss, double tol);
PRVerdict check_pr_discrete(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                            const DensityMatrix& rho_ss, const DiscreteCheckOptions& options);

struct FiniteTimeCheck {
    TransitionMatrix transition;
    /// max_k ‖exp(ℒτ)Π_k − Σ_j w_jk Π_j‖_F; O(τ²) when the rates are exact.
    double consistency = 0.0;
};

/// First-order finite-horizon transition probabilities built from the rates,
/// compared against exact propagation. Diagnostic only; the decision logic
/// uses the differential form. Requires τ·max_rate ≤ 0.1.
FiniteTimeCheck finite_time_transition(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                                       const RateMatrix& rates, double tau);

} // namespace prens

#endif // PRENS_PR_DISCRETE_HPP
