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

#ifndef PRENS_ENSEMBLE_HPP
#define PRENS_ENSEMBLE_HPP

#include <vector>

#include "prens/lindblad.hpp"
#include "prens/matrix.hpp"

namespace prens {

/// Normalized state vector (norm 1 within 1e-10).
class PureState {
public:
    explicit PureState(ComplexVector amplitudes);

    /// Normalizes the given amplitudes first; rejects the zero vector.
    static PureState normalized(ComplexVector amplitudes);

    /// Basis vector |index⟩ in dimension dim.
    static PureState basis(std::size_t index, std::size_t dim);

    std::size_t dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

    /// Rank-one projector |ψ⟩⟨ψ|.
    ComplexMatrix projector() const;

private:
    ComplexVector amplitudes_;
};

Complex overlap(const PureState& a, const PureState& b);

/// Weighted list of pure states. Weights are nonnegative and sum to one
/// within 1e-10; members must be pairwise distinct (projector trace
/// distance above 1e-8).
class DiscreteEnsemble {
public:
    DiscreteEnsemble(std::vector<PureState> states, RealVector weights);

    std::size_t size() const { return states_.size(); }
    std::size_t dim() const { return states_.front().dim(); }
    const std::vector<PureState>& states() const { return states_; }
    const RealVector& weights() const { return weights_; }

private:
    std::vector<PureState> states_;
    RealVector weights_;
};

/// ½‖a − b‖₁ for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// The mixture Σ_k ℘_k |ψ_k⟩⟨ψ_k|.
DensityMatrix ensemble_density(const DiscreteEnsemble& ensemble);

struct RepresentsCheck {
    bool represents = false;
    double distance = 0.0; ///< trace distance to the target state
};

/// Does the ensemble mixture reproduce the given state within `tol`
/// (trace distance)?
RepresentsCheck check_represents(const DiscreteEnsemble& ensemble,
                                 const DensityMatrix& rho_ss, double tol);

} // namespace prens

#endif // PRENS_ENSEMBLE_HPP
