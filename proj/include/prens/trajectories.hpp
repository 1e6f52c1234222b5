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

#ifndef PRENS_TRAJECTORIES_HPP
#define PRENS_TRAJECTORIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "prens/pr_discrete.hpp"
#include "prens/pr_gaussian.hpp"

namespace prens {

/// Shared stochastic-run settings. Trajectory index t draws from the RNG
/// stream (seed, t); results are therefore bit-identical for a fixed seed
/// regardless of how trajectories are scheduled across threads (the
/// reduction always runs in index order). Worker count is capped by the
/// PRENS_THREADS environment variable.
struct SimulationConfig {
    std::uint64_t seed = 0;
    double t_final = 0.0;
    double dt = 0.0; ///< diffusion step; unused by the jump simulator
    double burn_in = 0.0;
    std::size_t trajectories = 1;
};

/// Time-averaged member occupations with batch-mean error bars
/// (10 batches; occupations along a trajectory are autocorrelated, so the
/// naive binomial error would be too small). Runs with at least 10
/// trajectories batch whole trajectories, which also charges the error bar
/// with the initial-draw variance; shorter runs batch time windows.
struct OccupationStats {
    RealVector fractions;
    RealVector std_errors;
    double total_time = 0.0;
    std::uint64_t jump_count = 0;
    RealMatrix batch_fractions; ///< batches × members, diagnostic
    bool absorbing_state_reached = false;
};

/// Exact-event (Gillespie) continuous-time chain with the given rates:
/// holding time ~ Exponential(total outflow), next member ∝ its rate.
/// A member with zero outflow absorbs the remaining time.
OccupationStats simulate_jump(const RateMatrix& rates, const RealVector& initial_weights,
                              const SimulationConfig& cfg);

struct DiffusionStats {
    RealVector empirical_mean;
    RealSymmetricMatrix empirical_cov;
    std::uint64_t samples = 0;
};

/// Euler-Maruyama integration of the member-mean diffusion
/// μ ← μ − K·μ·dt + √(B_V·dt)·ξ; statistics over [burn_in, t_final] across
/// trajectories. Requires PSD excess diffusion and a Hurwitz drift.
DiffusionStats simulate_diffusion(const LinearDynamics& dyn, const RealSymmetricMatrix& v,
                                  const SimulationConfig& cfg,
                                  const RealVector& initial_mean = RealVector{});

struct MemberCheck {
    std::size_t index = 0;
    double weight = 0.0;
    double fraction = 0.0;
    double std_error = 0.0;
    double deviation = 0.0;
    bool exempt = false; ///< expected visits below the statistics floor
    bool pass = false;
};

struct CertificateValidation {
    bool pass = false;
    double exemption_threshold = 0.0;
    std::vector<MemberCheck> members;
    OccupationStats stats;
    std::vector<std::string> notes;
};

/// Ergodic check of a PR certificate: simulate the certified rates and
/// compare the time-averaged occupation of each member with its ensemble
/// weight at three standard errors. Members whose expected visit count over
/// the run is below five are exempted and listed.
CertificateValidation validate_certificate(const Lindbladian& gen,
                                           const DiscreteEnsemble& ensemble,
                                           const PRVerdict& verdict,
                                           const SimulationConfig& cfg);

} // namespace prens

#endif // PRENS_TRAJECTORIES_HPP
