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

#include "prens/ensemble.hpp"

#include <cmath>

#include "prens/numerics.hpp"

namespace prens {

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw InvalidInput("PureState: empty amplitude vector");
    for (const auto& a : amplitudes_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InvalidInput("PureState: non-finite amplitude");
    if (std::abs(norm2(amplitudes_) - 1.0) > 1e-10)
        throw InvalidInput("PureState: amplitudes are not normalized");
}

PureState PureState::normalized(ComplexVector amplitudes) {
    const double n = norm2(amplitudes);
    if (n == 0.0) throw InvalidInput("PureState: cannot normalize the zero vector");
    for (auto& a : amplitudes) a /= n;
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t index, std::size_t dim) {
    if (index >= dim) throw InvalidInput("PureState: basis index out of range");
    ComplexVector amp(dim, Complex{});
    amp[index] = Complex(1.0, 0.0);
    return PureState(std::move(amp));
}

ComplexMatrix PureState::projector() const {
    const std::size_t d = dim();
    ComplexMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
    return p;
}

Complex overlap(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw InvalidInput("overlap: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return s;
}

DiscreteEnsemble::DiscreteEnsemble(std::vector<PureState> states, RealVector weights)
    : states_(std::move(states)), weights_(std::move(weights)) {
    if (states_.empty()) throw InvalidInput("DiscreteEnsemble: needs at least one state");
    if (states_.size() != weights_.size())
        throw InvalidInput("DiscreteEnsemble: state/weight count mismatch");
    const std::size_t d = states_.front().dim();
    double total = 0;
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0)
            throw InvalidInput("DiscreteEnsemble: weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw InvalidInput("DiscreteEnsemble: weights must sum to one");
    for (const auto& s : states_)
        if (s.dim() != d) throw InvalidInput("DiscreteEnsemble: mixed state dimensions");
    // Pairwise distinctness; for pure states the projector trace distance
    // is sqrt(1 - |<a|b>|^2).
    for (std::size_t i = 0; i < states_.size(); ++i)
        for (std::size_t j = i + 1; j < states_.size(); ++j) {
            const double ov = std::abs(overlap(states_[i], states_[j]));
            const double dist = std::sqrt(std::max(0.0, 1.0 - ov * ov));
            if (dist <= 1e-8)
                throw InvalidInput("DiscreteEnsemble: members " + std::to_string(i) + " and " +
                                   std::to_string(j) + " coincide");
        }
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput("trace_distance: dimension mismatch");
    const RealVector eigs = herm_eigvals(a - b);
    double s = 0;
    for (double e : eigs) s += std::abs(e);
    return 0.5 * s;
}

DensityMatrix ensemble_density(const DiscreteEnsemble& ensemble) {
    const std::size_t d = ensemble.dim();
    ComplexMatrix rho(d, d);
    for (std::size_t k = 0; k < ensemble.size(); ++k) {
        const double w = ensemble.weights()[k];
        if (w == 0.0) continue;
        const ComplexVector& amp = ensemble.states()[k].amplitudes();
        for (std::size_t i = 0; i < d; ++i) {
            const Complex wi = w * amp[i];
            for (std::size_t j = 0; j < d; ++j) rho(i, j) += wi * std::conj(amp[j]);
        }
    }
    return DensityMatrix(rho);
}

RepresentsCheck check_represents(const DiscreteEnsemble& ensemble,
                                 const DensityMatrix& rho_ss, double tol) {
    if (ensemble.dim() != rho_ss.dim())
        throw InvalidInput("check_represents: dimension mismatch");
    RepresentsCheck out;
    out.distance = trace_distance(ensemble_density(ensemble).mat(), rho_ss.mat());
    out.represents = out.distance <= tol;
    return out;
}

} // namespace prens
