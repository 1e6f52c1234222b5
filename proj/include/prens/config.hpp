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

#ifndef PRENS_CONFIG_HPP
#define PRENS_CONFIG_HPP

#include <optional>
#include <string>

#include "prens/ensemble.hpp"
#include "prens/lindblad.hpp"
#include "prens/pr_discrete.hpp"
#include "prens/pr_gaussian.hpp"
#include "prens/trajectories.hpp"

namespace prens {

struct Tolerances {
    double representation = 1e-8;
    double feasibility = 1e-8;
    double psd = 1e-10;
};

/// Input file contents. JSON schema (all sections optional, commands check
/// for what they need):
///   "model":      {"dim": d, "hamiltonian": [[..]], "jumps": [[[..]], ...]}
///   "ensemble":   {"type": "discrete", "states": [[..], ...], "weights": [..]}
///                 or {"type": "gaussian", "V": [[..]]}
///   "dynamics":   {"K": [[..]], "D": [[..]]}
///   "rates":      [[..]]  with "weights": [..]   (direct jump simulation)
///   "tolerances": {"representation", "feasibility", "psd"}
///   "simulation": {"seed", "t_final", "dt", "burn_in", "trajectories"}
/// Complex scalars are [re, im] pairs; matrices are row-major nested arrays.
/// "K"/"D"/"V" may also appear at the top level as a shorthand.
struct ParsedConfig {
    std::optional<Lindbladian> model;
    std::optional<DiscreteEnsemble> ensemble;
    std::optional<GaussianEnsemble> gaussian;
    std::optional<LinearDynamics> dynamics;
    std::optional<RateMatrix> rates;
    std::optional<RealVector> rate_weights;
    Tolerances tolerances;
    SimulationConfig simulation;
    bool has_simulation = false;
};

/// Reads and validates a JSON config file. Missing file -> IoError; schema
/// violations -> ConfigError carrying a JSON-pointer-style location.
ParsedConfig parse_config(const std::string& path);

/// Same, from an in-memory document.
ParsedConfig parse_config_text(const std::string& text);

} // namespace prens

#endif // PRENS_CONFIG_HPP
