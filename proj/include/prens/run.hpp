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

#ifndef PRENS_RUN_HPP
#define PRENS_RUN_HPP

#include <optional>
#include <string>

#include "prens/config.hpp"
#include "prens/models.hpp"
#include "prens/report.hpp"

namespace prens {

enum class Command { CheckDiscrete, CheckGaussian, SimulateJump, SimulateDiffusion, Preset };

/// Exit codes: 0 = PR / success, 1 = NOT_PR, 2 = NOT_REPRESENTING, 3 = error.
inline constexpr int kExitPr = 0;
inline constexpr int kExitNotPr = 1;
inline constexpr int kExitNotRepresenting = 2;
inline constexpr int kExitError = 3;

struct RunConfig {
    Command command = Command::CheckDiscrete;
    std::optional<std::string> input_path;

    // Preset selection (command == Preset).
    std::string preset_name;                 ///< "atom-laser" | "two-level"
    std::string preset_mode = "gaussian";    ///< atom-laser: "gaussian" | "fock"
    std::string preset_check = "discrete";   ///< two-level check kind
    std::string preset_ensemble = "number";  ///< fock model: "number" | "coherent"
    AtomLaserParams laser{2.0, 1.0, 0.0, 0.0, 0};
    TwoLevelParams two_level{1.0, 2.0};
    std::size_t phases = 24;
    bool laser_nmax_set = false;
    bool validate_ergodics = false; ///< follow a PR verdict with a jump simulation

    // Flag overrides; file values apply when unset.
    std::optional<double> tol_representation;
    std::optional<double> tol_feasibility;
    std::optional<double> tol_psd;
    std::optional<std::size_t> exclude_top_levels;
    std::optional<std::uint64_t> seed;
    std::optional<double> t_final;
    std::optional<double> dt;
    std::optional<double> burn_in;
    std::optional<std::size_t> trajectories;

    std::string format = "json"; ///< "json" | "text"
};

struct RunOutcome {
    Report report;
    int exit_code = 0;
};

/// Executes one command and builds its report. Errors are captured in the
/// report payload with exit code 3 rather than thrown.
RunOutcome run(const RunConfig& config);

} // namespace prens

#endif // PRENS_RUN_HPP
