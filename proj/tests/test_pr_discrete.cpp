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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prens/models.hpp"
#include "prens/numerics.hpp"
#include "prens/pr_discrete.hpp"
#include "prens/trajectories.hpp"
#include "test_support.hpp"

using namespace prens;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState plus_state() { return PureState({Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)}); }
PureState minus_state() { return PureState({Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0)}); }

DiscreteEnsemble energy_ensemble(double up, double down) {
    const double total = up + down;
    return DiscreteEnsemble({PureState::basis(0, 2), PureState::basis(1, 2)},
                            {down / total, up / total});
}

} // namespace

TEST_CASE("RateMatrix validation") {
    RealMatrix bad(2, 2);
    bad(0, 0) = 1.0;
    CHECK_THROWS_AS(RateMatrix{bad}, InvalidInput);
    bad(0, 0) = 0.0;
    bad(0, 1) = -0.5;
    CHECK_THROWS_AS(RateMatrix{bad}, InvalidInput);
}

TEST_CASE("jump_rates recovers Einstein coefficients") {
    const double up = 1.0, down = 2.0;
    const Lindbladian gen = two_level_thermal({up, down});
    const JumpRatesResult fit = jump_rates(gen, energy_ensemble(up, down), 1e-8);
    CHECK(fit.feasible);
    CHECK(fit.residual <= 1e-10);
    CHECK(fit.rates(0, 1) == doctest::Approx(up).epsilon(1e-9));   // g -> e absorption
    CHECK(fit.rates(1, 0) == doctest::Approx(down).epsilon(1e-9)); // e -> g emission
}

TEST_CASE("jump_rates at infinite temperature in the superposition basis") {
    const double gamma = 0.8;
    const Lindbladian gen = two_level_thermal({gamma, gamma});
    const DiscreteEnsemble pm({plus_state(), minus_state()}, {0.5, 0.5});
    const JumpRatesResult fit = jump_rates(gen, pm, 1e-8);
    CHECK(fit.feasible);
    CHECK(fit.rates(0, 1) == doctest::Approx(gamma / 2.0).epsilon(1e-9));
    CHECK(fit.rates(1, 0) == doctest::Approx(gamma / 2.0).epsilon(1e-9));
}

TEST_CASE("jump_rates on the lasing birth-death ladder") {
    const double mu = 3.0, kappa = 1.0;
    const std::size_t nmax = 25, d = nmax + 1;
    const Lindbladian gen = atom_laser_fock({mu, kappa, 0.0, 0.0, nmax});
    const DiscreteEnsemble numbers = number_poisson_ensemble(mu, d);

    DiscreteCheckOptions options;
    options.feasibility_tol = 1e-8;
    options.exclude_top_levels = 2;
    const JumpRatesResult fit = jump_rates(gen, numbers, options);
    CHECK(fit.feasible);
    CHECK(fit.residual <= 1e-8);
    for (std::size_t n = 0; n + 3 < d; ++n) {
        CHECK(fit.rates(n, n + 1) == doctest::Approx(kappa * mu).epsilon(1e-6));
        if (n > 0) CHECK(fit.rates(n, n - 1) == doctest::Approx(kappa * n).epsilon(1e-6));
        // nothing jumps more than one rung
        for (std::size_t j = 0; j + 3 < d; ++j)
            if (j != n && j + 1 != n && j != n + 1)
                CHECK(fit.rates(n, j) <= 1e-6);
    }
}

TEST_CASE("stationarity_residual worked examples") {
    RealMatrix thermal_rates(2, 2);
    thermal_rates(0, 1) = 1.0; // up
    thermal_rates(1, 0) = 2.0; // down
    CHECK(stationarity_residual(RateMatrix{thermal_rates}, {2.0 / 3.0, 1.0 / 3.0}) ==
          doctest::Approx(0.0));

    RealMatrix symmetric(2, 2);
    symmetric(0, 1) = 0.7;
    symmetric(1, 0) = 0.7;
    CHECK(stationarity_residual(RateMatrix{symmetric}, {0.5, 0.5}) == doctest::Approx(0.0));

    RealMatrix one_way(2, 2);
    one_way(0, 1) = 1.0;
    CHECK(stationarity_residual(RateMatrix{one_way}, {0.5, 0.5}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(stationarity_residual(RateMatrix{one_way}, {1.0}), InvalidInput);
}

TEST_CASE("mixing_rate is the relaxation rate of the certificate chain") {
    // two-state chain relaxes at the sum of its rates
    RealMatrix two(2, 2);
    two(0, 1) = 1.0;
    two(1, 0) = 2.0;
    CHECK(mixing_rate(RateMatrix{two}) == doctest::Approx(3.0).epsilon(1e-9));

    // birth-death ladder with birth kappa*mu and death kappa*n relaxes at kappa
    const double kappa = 0.7, mu = 3.0;
    const std::size_t d = 20;
    RealMatrix ladder(d, d);
    for (std::size_t n = 0; n + 1 < d; ++n) ladder(n, n + 1) = kappa * mu;
    for (std::size_t n = 1; n < d; ++n) ladder(n, n - 1) = kappa * n;
    CHECK(mixing_rate(RateMatrix{ladder}) == doctest::Approx(kappa).epsilon(1e-6));

    CHECK(mixing_rate(RateMatrix::zero(3)) == 0.0);
}

TEST_CASE("check_pr_discrete accepts the thermal energy ensemble") {
    const double up = 1.0, down = 2.0;
    const Lindbladian gen = two_level_thermal({up, down});
    const DensityMatrix rho_ss = steady_state(gen, 1e-10);
    const PRVerdict verdict = check_pr_discrete(gen, energy_ensemble(up, down), rho_ss, 1e-8);
    CHECK(verdict.decision == PRDecision::PR);
    CHECK(verdict.feasibility_residual <= 1e-10);
    CHECK(verdict.stationarity_residual <= 1e-10);
    REQUIRE(verdict.certificate.has_value());
    CHECK((*verdict.certificate)(0, 1) == doctest::Approx(up).epsilon(1e-8));
    CHECK((*verdict.certificate)(1, 0) == doctest::Approx(down).epsilon(1e-8));
}

TEST_CASE("check_pr_discrete flags a non-representing ensemble") {
    const Lindbladian gen = two_level_thermal({1.0, 2.0});
    const DensityMatrix rho_ss = steady_state(gen, 1e-10);
    const DiscreteEnsemble pm({plus_state(), minus_state()}, {0.5, 0.5});
    const PRVerdict verdict = check_pr_discrete(gen, pm, rho_ss, 1e-8);
    CHECK(verdict.decision == PRDecision::NOT_REPRESENTING);
    CHECK(verdict.representation_distance == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    CHECK_FALSE(std::isfinite(verdict.feasibility_residual));
}

TEST_CASE("check_pr_discrete rejects the eigenstate ensemble of a driven atom") {
    // coherent drive + decay: the stationary eigenbasis is not preserved
    ComplexMatrix h(2, 2);
    h(0, 1) = 1.0;
    h(1, 0) = 1.0;
    ComplexMatrix lower(2, 2);
    lower(0, 1) = 1.0;
    const Lindbladian gen(h, {lower});
    const DensityMatrix rho_ss = steady_state(gen, 1e-10);

    // spectral decomposition of a 2x2 density matrix by hand
    const ComplexMatrix& r = rho_ss.mat();
    const double a = r(0, 0).real(), c = r(1, 1).real();
    const Complex b = r(0, 1);
    const double mid = 0.5 * (a + c);
    const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
    const double lam1 = mid + rad, lam2 = mid - rad;
    auto eigvec = [&](double lam) {
        ComplexVector v{b, Complex(lam - a, 0.0)};
        return PureState::normalized(std::move(v));
    };
    const DiscreteEnsemble spectral({eigvec(lam1), eigvec(lam2)}, {lam1, lam2});
    REQUIRE(check_represents(spectral, rho_ss, 1e-8).represents);

    const PRVerdict verdict = check_pr_discrete(gen, spectral, rho_ss, 1e-8);
    CHECK(verdict.decision == PRDecision::NOT_PR);
    CHECK(verdict.feasibility_residual > 1e-3);
}

TEST_CASE("check_pr_discrete singleton branch") {
    const Lindbladian pure_decay = two_level_thermal({0.0, 1.0});
    const DensityMatrix rho_ss = steady_state(pure_decay, 1e-10);
    const DiscreteEnsemble dark({PureState::basis(0, 2)}, {1.0});
    const PRVerdict verdict = check_pr_discrete(pure_decay, dark, rho_ss, 1e-8);
    CHECK(verdict.decision == PRDecision::PR);

    // weak absorption: |g> alone still "represents" at a loose gate but is
    // not stationary, so the singleton is rejected
    const Lindbladian warm = two_level_thermal({0.05, 1.0});
    const DensityMatrix warm_ss = steady_state(warm, 1e-10);
    DiscreteCheckOptions loose;
    loose.representation_tol = 0.1;
    loose.feasibility_tol = 1e-8;
    const PRVerdict singleton = check_pr_discrete(warm, dark, warm_ss, loose);
    CHECK(singleton.decision == PRDecision::NOT_PR);
    CHECK(singleton.feasibility_residual > 1e-2);
}

TEST_CASE("certificate reconstructs the generator action") {
    const double up = 0.7, down = 1.9;
    const Lindbladian gen = two_level_thermal({up, down});
    const DensityMatrix rho_ss = steady_state(gen, 1e-10);
    const DiscreteEnsemble ens = energy_ensemble(up, down);
    const PRVerdict verdict = check_pr_discrete(gen, ens, rho_ss, 1e-8);
    REQUIRE(verdict.certificate.has_value());

    for (std::size_t k = 0; k < 2; ++k) {
        ComplexMatrix predicted(2, 2);
        for (std::size_t j = 0; j < 2; ++j) {
            if (j == k) continue;
            const double rate = (*verdict.certificate)(k, j);
            predicted += Complex(rate, 0.0) * (ens.states()[j].projector() -
                                               ens.states()[k].projector());
        }
        const ComplexMatrix actual = apply_lindbladian(gen, ens.states()[k].projector());
        CHECK(frobenius_distance(predicted, actual) <= 1e-8);
    }
}

TEST_CASE("decision and certificate scale with the jump rates") {
    const double up = 1.0, down = 2.0;
    for (double s : {0.5, 2.0, 10.0}) {
        const Lindbladian scaled = two_level_thermal({s * up, s * down});
        const DensityMatrix rho_ss = steady_state(scaled, 1e-10);
        const PRVerdict verdict =
            check_pr_discrete(scaled, energy_ensemble(up, down), rho_ss, 1e-8);
        CHECK(verdict.decision == PRDecision::PR);
        CHECK((*verdict.certificate)(0, 1) == doctest::Approx(s * up).epsilon(1e-8));
        CHECK((*verdict.certificate)(1, 0) == doctest::Approx(s * down).epsilon(1e-8));
    }

    // a non-realizable case stays non-realizable under rescaling
    ComplexMatrix h(2, 2);
    h(0, 1) = 1.0;
    h(1, 0) = 1.0;
    ComplexMatrix lower(2, 2);
    lower(0, 1) = 1.0;
    for (double s : {0.5, 2.0}) {
        const Lindbladian gen(Complex(s, 0) * h, {Complex(std::sqrt(s), 0) * lower});
        const DensityMatrix rho_ss = steady_state(gen, 1e-10);
        const ComplexMatrix& r = rho_ss.mat();
        const double a = r(0, 0).real(), c = r(1, 1).real();
        const Complex b = r(0, 1);
        const double mid = 0.5 * (a + c);
        const double rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
        auto eigvec = [&](double lam) {
            return PureState::normalized({b, Complex(lam - a, 0.0)});
        };
        const DiscreteEnsemble spectral({eigvec(mid + rad), eigvec(mid - rad)},
                                        {mid + rad, mid - rad});
        CHECK(check_pr_discrete(gen, spectral, rho_ss, 1e-8).decision == PRDecision::NOT_PR);
    }
}

TEST_CASE("verdict is invariant under member permutation and global phases") {
    const double up = 1.0, down = 2.0;
    const Lindbladian gen = two_level_thermal({up, down});
    const DensityMatrix rho_ss = steady_state(gen, 1e-10);
    const double total = up + down;

    const DiscreteEnsemble swapped({PureState::basis(1, 2), PureState::basis(0, 2)},
                                   {up / total, down / total});
    const PRVerdict verdict = check_pr_discrete(gen, swapped, rho_ss, 1e-8);
    CHECK(verdict.decision == PRDecision::PR);
    CHECK((*verdict.certificate)(1, 0) == doctest::Approx(up).epsilon(1e-8));
    CHECK((*verdict.certificate)(0, 1) == doctest::Approx(down).epsilon(1e-8));

    const Complex phase = std::exp(Complex(0.0, 0.9));
    const DiscreteEnsemble rephased(
        {PureState({phase, Complex(0, 0)}), PureState({Complex(0, 0), -phase})},
        {down / total, up / total});
    const PRVerdict rephrased_verdict = check_pr_discrete(gen, rephased, rho_ss, 1e-8);
    CHECK(rephrased_verdict.decision == PRDecision::PR);
    CHECK((*rephrased_verdict.certificate)(0, 1) == doctest::Approx(up).epsilon(1e-8));
}

TEST_CASE("joint solve handles linearly dependent projectors") {
    // four equatorial superpositions: their projectors span only a
    // 3-dimensional space, so the rate decomposition is not unique and the
    // stationarity rows must be solved together with the generator blocks
    const double gamma = 1.0;
    const Lindbladian gen = two_level_thermal({gamma, gamma});
    const DensityMatrix rho_ss = steady_state(gen, 1e-10);
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<PureState> states{PureState({Complex(s, 0), Complex(s, 0)}),
                                  PureState({Complex(s, 0), Complex(-s, 0)}),
                                  PureState({Complex(s, 0), Complex(0, s)}),
                                  PureState({Complex(s, 0), Complex(0, -s)})};
    const DiscreteEnsemble ens(states, {0.25, 0.25, 0.25, 0.25});

    const PRVerdict verdict = check_pr_discrete(gen, ens, rho_ss, 1e-8);
    CHECK(verdict.decision == PRDecision::PR);
    CHECK(verdict.stationarity_residual <= 1e-10);
    // antipodal hopping at gamma/2 keeps each pair balanced
    CHECK((*verdict.certificate)(0, 1) == doctest::Approx(gamma / 2).epsilon(1e-8));
    CHECK((*verdict.certificate)(2, 3) == doctest::Approx(gamma / 2).epsilon(1e-8));

    // the certificate chain is reducible (antipodal pairs never mix), so a
    // meaningful ergodic check needs the across-trajectory initial draw
    SimulationConfig cfg;
    cfg.seed = 0;
    cfg.t_final = 200.0;
    cfg.burn_in = 5.0;
    cfg.trajectories = 200;
    const CertificateValidation validation = validate_certificate(gen, ens, verdict, cfg);
    CHECK(validation.pass);
}

TEST_CASE("number-diagonal feasibility matches a classical chain") {
    const double mu = 2.0, kappa = 1.0;
    const std::size_t nmax = 14, d = nmax + 1;
    const Lindbladian gen = atom_laser_fock({mu, kappa, 0.0, 0.0, nmax});
    const DensityMatrix rho_ss = steady_state(gen, 1e-8);
    const DiscreteEnsemble numbers = number_poisson_ensemble(mu, d);

    // directly constructed birth-death chain with the lasing rates
    RealMatrix chain(d, d);
    for (std::size_t n = 0; n + 1 < d; ++n) chain(n, n + 1) = kappa * mu;
    for (std::size_t n = 1; n < d; ++n) chain(n, n - 1) = kappa * n;
    const RateMatrix classical{chain};
    CHECK(stationarity_residual(classical, numbers.weights()) <= 1e-12);

    DiscreteCheckOptions options;
    options.feasibility_tol = 1e-8;
    options.exclude_top_levels = 2;
    const PRVerdict verdict = check_pr_discrete(gen, numbers, rho_ss, options);
    CHECK(verdict.decision == PRDecision::PR);
    for (std::size_t n = 0; n + 3 < d; ++n) {
        CHECK((*verdict.certificate)(n, n + 1) ==
              doctest::Approx(classical(n, n + 1)).epsilon(1e-6));
        if (n > 0)
            CHECK((*verdict.certificate)(n, n - 1) ==
                  doctest::Approx(classical(n, n - 1)).epsilon(1e-6));
    }
}

TEST_CASE("finite_time_transition") {
    const double up = 1.0, down = 2.0;
    const Lindbladian gen = two_level_thermal({up, down});
    const DiscreteEnsemble ens = energy_ensemble(up, down);

    // zero rates: identity transition, consistency gauges the raw motion
    const FiniteTimeCheck frozen = finite_time_transition(gen, ens, RateMatrix::zero(2), 0.01);
    CHECK(frozen.transition(0, 0) == 1.0);
    CHECK(frozen.transition(1, 1) == 1.0);
    CHECK(frozen.consistency > 1e-4);

    RealMatrix exact(2, 2);
    exact(0, 1) = up;
    exact(1, 0) = down;
    const RateMatrix rates{exact};

    const double tau = 1e-3 / rates.max_total_rate();
    const FiniteTimeCheck fine = finite_time_transition(gen, ens, rates, tau);
    CHECK(fine.consistency <= 1e-5);

    // first-order construction leaves an O(tau^2) remainder
    const FiniteTimeCheck half = finite_time_transition(gen, ens, rates, tau / 2.0);
    const double ratio = fine.consistency / half.consistency;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);

    CHECK_THROWS_AS(finite_time_transition(gen, ens, rates, 1.0), InvalidInput);
}
