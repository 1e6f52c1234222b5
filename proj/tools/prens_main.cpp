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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prens/run.hpp"
#include "prens/version.hpp"

namespace {

struct CliState {
    prens::RunConfig config;
    std::optional<std::string> out_path;

    // CLI11 needs addressable storage for optional flags.
    double tol_representation = 0, tol_feasibility = 0, tol_psd = 0;
    std::uint64_t seed = 0;
    double t_final = 0, dt = 0, burn_in = 0;
    std::size_t trajectories = 0;
    std::size_t exclude_top_levels = 0;
};

void add_common_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--representation-tol", state.tol_representation,
                    "Trace-distance gate for ensemble representation")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--feasibility-tol", state.tol_feasibility,
                    "Residual gate for the rate-feasibility solve")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--psd-tol", state.tol_psd, "Eigenvalue slack for PSD decisions")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", state.seed, "RNG seed (default 0)");
    cmd->add_option("--t-final", state.t_final, "Simulation horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--dt", state.dt, "Diffusion step size")->check(CLI::PositiveNumber);
    cmd->add_option("--burn-in", state.burn_in, "Discarded initial interval")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--trajectories", state.trajectories, "Independent trajectories");
    cmd->add_option("--format", state.config.format, "Output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", state.out_path, "Write the report to a file instead of stdout");
}

void collect_overrides(const CLI::App* cmd, CliState& state) {
    auto& cfg = state.config;
    if (cmd->count("--representation-tol")) cfg.tol_representation = state.tol_representation;
    if (cmd->count("--feasibility-tol")) cfg.tol_feasibility = state.tol_feasibility;
    if (cmd->count("--psd-tol")) cfg.tol_psd = state.tol_psd;
    if (cmd->count("--seed")) cfg.seed = state.seed;
    if (cmd->count("--t-final")) cfg.t_final = state.t_final;
    if (cmd->count("--dt")) cfg.dt = state.dt;
    if (cmd->count("--burn-in")) cfg.burn_in = state.burn_in;
    if (cmd->count("--trajectories")) cfg.trajectories = state.trajectories;
}

int emit(const prens::RunOutcome& outcome, const CliState& state) {
    const std::string body = state.config.format == "text"
                                 ? outcome.report.to_text()
                                 : outcome.report.to_json().dump(2) + "\n";
    if (state.out_path) {
        std::ofstream out(*state.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "prens: cannot write " << *state.out_path << "\n";
            return prens::kExitError;
        }
        out << body;
    } else {
        std::cout << body;
    }
    return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physical realizability checks for stationary pure-state ensembles "
                 "of Markovian open quantum systems"};
    app.set_version_flag("--version", std::string(prens::kToolVersion));
    app.require_subcommand(1);

    CliState state;
    std::string input_path;

    auto* check_discrete = app.add_subcommand(
        "check-discrete", "Rate-feasibility + stationarity check for a discrete ensemble");
    check_discrete->add_option("config", input_path, "JSON input file")->required();
    check_discrete->add_flag("--validate", state.config.validate_ergodics,
                             "Follow a PR verdict with an ergodic jump simulation");
    auto* excl_opt = check_discrete->add_option(
        "--exclude-top-levels", state.exclude_top_levels,
        "Drop generator constraints touching the top N truncated basis levels");
    add_common_options(check_discrete, state);

    auto* check_gaussian = app.add_subcommand(
        "check-gaussian", "Excess-diffusion PSD criterion for a uniform Gaussian ensemble");
    check_gaussian->add_option("config", input_path, "JSON input file")->required();
    add_common_options(check_gaussian, state);

    auto* simulate_jump = app.add_subcommand(
        "simulate-jump", "Continuous-time jump simulation of certificate rates");
    simulate_jump->add_option("config", input_path, "JSON input file")->required();
    add_common_options(simulate_jump, state);

    auto* simulate_diffusion = app.add_subcommand(
        "simulate-diffusion", "Euler-Maruyama simulation of the member-mean diffusion");
    simulate_diffusion->add_option("config", input_path, "JSON input file")->required();
    add_common_options(simulate_diffusion, state);

    auto* preset = app.add_subcommand("preset", "Built-in models: atom-laser, two-level");
    preset->add_option("name", state.config.preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember({"atom-laser", "two-level"}));
    preset->add_option("--mode", state.config.preset_mode,
                       "atom-laser variant: gaussian (linearized) or fock");
    preset->add_option("--check", state.config.preset_check, "two-level check kind");
    preset->add_option("--ensemble", state.config.preset_ensemble,
                       "fock ensemble: number or coherent");
    preset->add_option("--mu", state.config.laser.mu, "Mean occupation");
    preset->add_option("--kappa", state.config.laser.kappa, "Damping rate");
    preset->add_option("--chi", state.config.laser.chi, "Interaction strength");
    preset->add_option("--nu", state.config.laser.nu, "Excess phase diffusion");
    auto* nmax_opt =
        preset->add_option("--nmax", state.config.laser.nmax, "Fock truncation (d = nmax+1)");
    preset->add_option("--phases", state.config.phases, "Coherent ensemble phase count");
    preset->add_option("--gamma-up", state.config.two_level.gamma_up, "Absorption rate");
    preset->add_option("--gamma-down", state.config.two_level.gamma_down, "Emission rate");
    preset->add_flag("--validate", state.config.validate_ergodics,
                     "Follow a PR verdict with an ergodic jump simulation");
    add_common_options(preset, state);

    CLI11_PARSE(app, argc, argv);

    CLI::App* active = app.get_subcommands().front();
    if (active == check_discrete) state.config.command = prens::Command::CheckDiscrete;
    if (active == check_gaussian) state.config.command = prens::Command::CheckGaussian;
    if (active == simulate_jump) state.config.command = prens::Command::SimulateJump;
    if (active == simulate_diffusion) state.config.command = prens::Command::SimulateDiffusion;
    if (active == preset) {
        state.config.command = prens::Command::Preset;
        state.config.laser_nmax_set = nmax_opt->count() > 0;
    }
    if (active != preset) state.config.input_path = input_path;
    if (active == check_discrete && excl_opt->count() > 0)
        state.config.exclude_top_levels = state.exclude_top_levels;
    collect_overrides(active, state);

    return emit(prens::run(state.config), state);
}
