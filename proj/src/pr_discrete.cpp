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

#include "prens/pr_discrete.hpp"

#include <cmath>
#include <limits>

#include "prens/numerics.hpp"

namespace prens {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

/// Frobenius-isometric real coordinates of Hermitian matrices restricted to
/// the first `keep` basis levels: diagonal entries as-is, off-diagonal pairs
/// as √2·Re and √2·Im.
std::size_t herm_coord_count(std::size_t keep) { return keep * keep; }

void herm_vec_into(const ComplexMatrix& h, std::size_t keep, double* out) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < keep; ++i) out[idx++] = h(i, i).real();
    for (std::size_t i = 0; i < keep; ++i)
        for (std::size_t j = i + 1; j < keep; ++j) {
            out[idx++] = kSqrt2 * h(i, j).real();
            out[idx++] = kSqrt2 * h(i, j).imag();
        }
}

std::size_t rate_column(std::size_t k, std::size_t j, std::size_t members) {
    return k * (members - 1) + (j < k ? j : j - 1);
}

RateMatrix rates_from_solution(const RealVector& x, std::size_t members) {
    RealMatrix gamma(members, members);
    for (std::size_t k = 0; k < members; ++k)
        for (std::size_t j = 0; j < members; ++j) {
            if (j == k) continue;
            gamma(k, j) = x[rate_column(k, j, members)];
        }
    return RateMatrix(std::move(gamma));
}

struct VectorizedEnsemble {
    std::size_t keep = 0;
    std::size_t ncoords = 0;
    std::vector<RealVector> projector_vecs; ///< vec_h(Π_k)
    std::vector<RealVector> generator_vecs; ///< vec_h(ℒΠ_k)
    std::vector<double> generator_norms;    ///< ‖ℒΠ_k‖_F over kept levels
};

VectorizedEnsemble vectorize(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                             std::size_t exclude_top_levels) {
    const std::size_t d = gen.dim();
    if (exclude_top_levels >= d)
        throw InvalidInput("check: cannot exclude every basis level");
    VectorizedEnsemble v;
    v.keep = d - exclude_top_levels;
    v.ncoords = herm_coord_count(v.keep);
    const std::size_t members = ensemble.size();
    v.projector_vecs.resize(members, RealVector(v.ncoords));
    v.generator_vecs.resize(members, RealVector(v.ncoords));
    v.generator_norms.resize(members);
    for (std::size_t k = 0; k < members; ++k) {
        const ComplexMatrix proj = ensemble.states()[k].projector();
        herm_vec_into(proj, v.keep, v.projector_vecs[k].data());
        herm_vec_into(apply_lindbladian(gen, proj), v.keep, v.generator_vecs[k].data());
        v.generator_norms[k] = norm2(v.generator_vecs[k]);
    }
    return v;
}

} // namespace

RateMatrix::RateMatrix(RealMatrix rates) : rates_(std::move(rates)) {
    if (!rates_.square()) throw InvalidInput("RateMatrix: must be square");
    if (!rates_.all_finite()) throw InvalidInput("RateMatrix: non-finite rates");
    for (std::size_t k = 0; k < rates_.rows(); ++k) {
        if (rates_(k, k) != 0.0)
            throw InvalidInput("RateMatrix: diagonal must be zero (loss term is implicit)");
        for (std::size_t j = 0; j < rates_.cols(); ++j)
            if (rates_(k, j) < 0)
                throw InvalidInput("RateMatrix: negative rate");
    }
}

double RateMatrix::total_rate(std::size_t from) const {
    double s = 0;
    for (std::size_t j = 0; j < rates_.cols(); ++j) s += rates_(from, j);
    return s;
}

double RateMatrix::max_rate() const { return rates_.max_abs(); }

double RateMatrix::max_total_rate() const {
    double s = 0;
    for (std::size_t k = 0; k < rates_.rows(); ++k) s = std::max(s, total_rate(k));
    return s;
}

TransitionMatrix::TransitionMatrix(RealMatrix w, double horizon)
    : w_(std::move(w)), horizon_(horizon) {
    if (!w_.square()) throw InvalidInput("TransitionMatrix: must be square");
    if (!(horizon_ > 0)) throw InvalidInput("TransitionMatrix: horizon must be positive");
    for (std::size_t j = 0; j < w_.cols(); ++j) {
        double col = 0;
        for (std::size_t i = 0; i < w_.rows(); ++i) {
            if (w_(i, j) < -1e-10) throw InvalidInput("TransitionMatrix: negative probability");
            col += w_(i, j);
        }
        if (std::abs(col - 1.0) > 1e-8)
            throw InvalidInput("TransitionMatrix: column " + std::to_string(j) +
                               " does not sum to one");
    }
}

std::string to_string(PRDecision decision) {
    switch (decision) {
    case PRDecision::PR: return "PR";
    case PRDecision::NOT_PR: return "NOT_PR";
    case PRDecision::NOT_REPRESENTING: return "NOT_REPRESENTING";
    }
    return "UNKNOWN";
}

JumpRatesResult jump_rates(const Lindbladian& gen, const DiscreteEnsemble& ensemble, double tol) {
    DiscreteCheckOptions options;
    options.feasibility_tol = tol;
    return jump_rates(gen, ensemble, options);
}

JumpRatesResult jump_rates(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                           const DiscreteCheckOptions& options) {
    if (gen.dim() != ensemble.dim()) throw InvalidInput("jump_rates: dimension mismatch");
    const std::size_t members = ensemble.size();
    const VectorizedEnsemble vecs = vectorize(gen, ensemble, options.exclude_top_levels);

    JumpRatesResult out{RateMatrix::zero(members)};
    if (members == 1) {
        out.residual = vecs.generator_norms[0] / (1.0 + vecs.generator_norms[0]);
        out.feasible = vecs.generator_norms[0] <= options.feasibility_tol;
        return out;
    }

    RealMatrix gamma(members, members);
    double worst = 0;
    for (std::size_t k = 0; k < members; ++k) {
        RealMatrix a(vecs.ncoords, members - 1);
        for (std::size_t j = 0, col = 0; j < members; ++j) {
            if (j == k) continue;
            for (std::size_t c = 0; c < vecs.ncoords; ++c)
                a(c, col) = vecs.projector_vecs[j][c] - vecs.projector_vecs[k][c];
            ++col;
        }
        const NnlsResult fit = nnls_feasibility(a, vecs.generator_vecs[k], options.feasibility_tol);
        for (std::size_t j = 0, col = 0; j < members; ++j) {
            if (j == k) continue;
            gamma(k, j) = fit.x[col++];
        }
        worst = std::max(worst, fit.residual / (1.0 + vecs.generator_norms[k]));
    }
    out.rates = RateMatrix(std::move(gamma));
    out.residual = worst;
    out.feasible = worst <= options.feasibility_tol;
    return out;
}

double stationarity_residual(const RateMatrix& rates, const RealVector& weights) {
    if (weights.size() != rates.members())
        throw InvalidInput("stationarity_residual: dimension mismatch");
    const std::size_t members = rates.members();
    double worst = 0;
    for (std::size_t j = 0; j < members; ++j) {
        double inflow = 0;
        for (std::size_t k = 0; k < members; ++k) inflow += weights[k] * rates(k, j);
        const double outflow = weights[j] * rates.total_rate(j);
        worst = std::max(worst, std::abs(inflow - outflow));
    }
    return worst;
}

double mixing_rate(const RateMatrix& rates) {
    const std::size_t members = rates.members();
    RealMatrix generator(members, members);
    for (std::size_t k = 0; k < members; ++k) {
        generator(k, k) = -rates.total_rate(k);
        for (std::size_t j = 0; j < members; ++j)
            if (j != k) generator(j, k) = rates(k, j);
    }
    const double scale = std::max(rates.max_total_rate(), 1e-300);
    double gap = 0;
    for (const Complex& eig : eigvals_general(generator)) {
        const double relaxation = -eig.real();
        if (relaxation > 1e-10 * scale && (gap == 0 || relaxation < gap)) gap = relaxation;
    }
    return gap;
}

PRVerdict check_pr_discrete(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                            const DensityMatrix& rho_ss, double tol) {
    DiscreteCheckOptions options;
    options.feasibility_tol = tol;
    return check_pr_discrete(gen, ensemble, rho_ss, options);
}

PRVerdict check_pr_discrete(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                            const DensityMatrix& rho_ss, const DiscreteCheckOptions& options) {
    if (gen.dim() != ensemble.dim() || gen.dim() != rho_ss.dim())
        throw InvalidInput("check_pr_discrete: dimension mismatch");

    PRVerdict verdict;
    const RepresentsCheck rep =
        check_represents(ensemble, rho_ss, options.representation_tol);
    verdict.representation_distance = rep.distance;
    if (!rep.represents) {
        verdict.decision = PRDecision::NOT_REPRESENTING;
        verdict.feasibility_residual = std::numeric_limits<double>::quiet_NaN();
        verdict.stationarity_residual = std::numeric_limits<double>::quiet_NaN();
        verdict.notes.push_back("ensemble mixture is " + std::to_string(rep.distance) +
                                " away from the stationary state (tol " +
                                std::to_string(options.representation_tol) + ")");
        return verdict;
    }

    const std::size_t members = ensemble.size();
    const VectorizedEnsemble vecs = vectorize(gen, ensemble, options.exclude_top_levels);
    if (options.exclude_top_levels > 0)
        verdict.notes.push_back("generator constraints exclude the top " +
                                std::to_string(options.exclude_top_levels) +
                                " truncated basis levels");

    if (members == 1) {
        // A singleton ensemble is realizable exactly when its one state is
        // itself stationary.
        const double residual = vecs.generator_norms[0];
        verdict.certificate = RateMatrix::zero(1);
        verdict.feasibility_residual = residual;
        verdict.stationarity_residual = 0.0;
        verdict.decision =
            residual <= options.feasibility_tol ? PRDecision::PR : PRDecision::NOT_PR;
        return verdict;
    }

    // One stacked nonnegative least-squares system: per-member generator
    // blocks followed by the weight-stationarity rows (unit balance weight,
    // same Frobenius scale as the generator blocks).
    const std::size_t ncols = members * (members - 1);
    const std::size_t nrows = members * vecs.ncoords + members;
    RealMatrix joint(nrows, ncols);
    RealVector rhs(nrows, 0.0);

    for (std::size_t k = 0; k < members; ++k) {
        const std::size_t row0 = k * vecs.ncoords;
        for (std::size_t c = 0; c < vecs.ncoords; ++c) rhs[row0 + c] = vecs.generator_vecs[k][c];
        for (std::size_t j = 0; j < members; ++j) {
            if (j == k) continue;
            const std::size_t col = rate_column(k, j, members);
            for (std::size_t c = 0; c < vecs.ncoords; ++c)
                joint(row0 + c, col) = vecs.projector_vecs[j][c] - vecs.projector_vecs[k][c];
        }
    }
    const RealVector& weights = ensemble.weights();
    for (std::size_t j = 0; j < members; ++j) {
        const std::size_t row = members * vecs.ncoords + j;
        for (std::size_t k = 0; k < members; ++k) {
            if (k == j) continue;
            joint(row, rate_column(k, j, members)) += weights[k];
            joint(row, rate_column(j, k, members)) -= weights[j];
        }
    }

    const NnlsResult fit = nnls_feasibility(joint, rhs, options.feasibility_tol);
    if (fit.iteration_cap_reached)
        verdict.notes.push_back("active-set iteration cap reached; declared infeasible");

    const RateMatrix certificate = rates_from_solution(fit.x, members);
    verdict.feasibility_residual = fit.residual / (1.0 + norm2(rhs));
    verdict.stationarity_residual = stationarity_residual(certificate, weights);
    const bool pr = fit.feasible &&
                    verdict.stationarity_residual <= options.feasibility_tol;
    verdict.decision = pr ? PRDecision::PR : PRDecision::NOT_PR;
    verdict.notes.push_back("certificate max rate " + std::to_string(certificate.max_rate()));
    verdict.certificate = certificate;
    return verdict;
}

FiniteTimeCheck finite_time_transition(const Lindbladian& gen, const DiscreteEnsemble& ensemble,
                                       const RateMatrix& rates, double tau) {
    if (gen.dim() != ensemble.dim())
        throw InvalidInput("finite_time_transition: dimension mismatch");
    if (rates.members() != ensemble.size())
        throw InvalidInput("finite_time_transition: rate matrix size mismatch");
    if (!(tau > 0) || tau * rates.max_total_rate() > 0.1)
        throw InvalidInput("finite_time_transition: need tau > 0 with tau*max_rate <= 0.1");

    const std::size_t members = ensemble.size();
    RealMatrix w(members, members);
    for (std::size_t k = 0; k < members; ++k) {
        w(k, k) = 1.0 - tau * rates.total_rate(k);
        for (std::size_t j = 0; j < members; ++j) {
            if (j == k) continue;
            w(j, k) = tau * rates(k, j);
        }
    }
    FiniteTimeCheck out{TransitionMatrix(std::move(w), tau)};

    const std::size_t d = gen.dim();
    ComplexMatrix sup = superoperator_matrix(gen);
    sup *= Complex(tau, 0.0);
    const ComplexMatrix evolution = expm(sup);

    std::vector<ComplexMatrix> projectors;
    projectors.reserve(members);
    for (const auto& state : ensemble.states()) projectors.push_back(state.projector());

    double worst = 0;
    for (std::size_t k = 0; k < members; ++k) {
        const ComplexVector evolved = evolution * vec_row_major(projectors[k]);
        ComplexMatrix predicted(d, d);
        for (std::size_t j = 0; j < members; ++j) {
            const double wjk = out.transition(j, k);
            if (wjk == 0.0) continue;
            predicted += Complex(wjk, 0.0) * projectors[j];
        }
        worst = std::max(worst,
                         frobenius_distance(unvec_row_major(evolved, d), predicted));
    }
    out.consistency = worst;
    return out;
}

} // namespace prens
