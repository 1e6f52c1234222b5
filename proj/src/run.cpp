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

#include "prens/run.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "prens/numerics.hpp"
#include "prens/trajectories.hpp"
#include "prens/version.hpp"

namespace prens {

namespace {

using nlohmann::json;

json to_json(const RealMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const RealVector& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

json finite_or_null(double x) {
    if (std::isfinite(x)) return json(x);
    return json(nullptr);
}

std::string command_name(Command c) {
    switch (c) {
    case Command::CheckDiscrete: return "check-discrete";
    case Command::CheckGaussian: return "check-gaussian";
    case Command::SimulateJump: return "simulate-jump";
    case Command::SimulateDiffusion: return "simulate-diffusion";
    case Command::Preset: return "preset";
    }
    return "unknown";
}

double drift_inf_norm(const RealMatrix& k) {
    double best = 0;
    for (std::size_t i = 0; i < k.rows(); ++i) {
        double row = 0;
        for (std::size_t j = 0; j < k.cols(); ++j) row += std::abs(k(i, j));
        best = std::max(best, row);
    }
    return best;
}

json verdict_payload(const PRVerdict& verdict, bool include_rates) {
    json payload{{"decision", to_string(verdict.decision)},
                 {"representation_distance", verdict.representation_distance},
                 {"feasibility_residual", finite_or_null(verdict.feasibility_residual)},
                 {"stationarity_residual", finite_or_null(verdict.stationarity_residual)},
                 {"notes", verdict.notes}};
    if (verdict.certificate) {
        json cert{{"members", verdict.certificate->members()},
                  {"max_rate", verdict.certificate->max_rate()},
                  {"max_total_rate", verdict.certificate->max_total_rate()}};
        if (include_rates && verdict.certificate->members() <= 64)
            cert["rates"] = to_json(verdict.certificate->mat());
        payload["certificate"] = std::move(cert);
    }
    return payload;
}

json occupation_payload(const OccupationStats& stats) {
    return json{{"fractions", to_json(stats.fractions)},
                {"std_errors", to_json(stats.std_errors)},
                {"total_time", stats.total_time},
                {"jump_count", stats.jump_count},
                {"absorbing_state_reached", stats.absorbing_state_reached}};
}

json validation_payload(const CertificateValidation& validation) {
    json members = json::array();
    for (const auto& m : validation.members)
        members.push_back(json{{"index", m.index},
                               {"weight", m.weight},
                               {"fraction", m.fraction},
                               {"std_error", m.std_error},
                               {"deviation", m.deviation},
                               {"exempt", m.exempt},
                               {"pass", m.pass}});
    return json{{"pass", validation.pass},
                {"exemption_threshold", validation.exemption_threshold},
                {"members", std::move(members)},
                {"stats", occupation_payload(validation.stats)},
                {"notes", validation.notes}};
}

int decision_exit(PRDecision decision) {
    switch (decision) {
    case PRDecision::PR: return kExitPr;
    case PRDecision::NOT_PR: return kExitNotPr;
    case PRDecision::NOT_REPRESENTING: return kExitNotRepresenting;
    }
    return kExitError;
}

struct Inputs {
    ParsedConfig parsed;
    Tolerances tol;
    SimulationConfig sim;
    DiscreteCheckOptions discrete;
};

void apply_overrides(const RunConfig& cfg, Inputs& in) {
    in.tol = in.parsed.tolerances;
    if (cfg.tol_representation) in.tol.representation = *cfg.tol_representation;
    if (cfg.tol_feasibility) in.tol.feasibility = *cfg.tol_feasibility;
    if (cfg.tol_psd) in.tol.psd = *cfg.tol_psd;
    in.sim = in.parsed.simulation;
    if (cfg.seed) in.sim.seed = *cfg.seed;
    if (cfg.t_final) in.sim.t_final = *cfg.t_final;
    if (cfg.dt) in.sim.dt = *cfg.dt;
    if (cfg.burn_in) in.sim.burn_in = *cfg.burn_in;
    if (cfg.trajectories) in.sim.trajectories = *cfg.trajectories;
    in.discrete.representation_tol = in.tol.representation;
    in.discrete.feasibility_tol = in.tol.feasibility;
    if (cfg.exclude_top_levels) in.discrete.exclude_top_levels = *cfg.exclude_top_levels;
}

void default_jump_horizon(SimulationConfig& sim, double rate_scale) {
    const double scale = rate_scale > 0 ? rate_scale : 1.0;
    if (sim.t_final <= 0) sim.t_final = 2000.0 / scale;
    if (sim.burn_in <= 0) sim.burn_in = 10.0 / scale;
    if (sim.burn_in >= sim.t_final) sim.burn_in = 0.0;
}

json check_discrete_impl(const RunConfig& cfg, Inputs& in, int& exit_code) {
    if (!in.parsed.model) throw ConfigError("check-discrete needs a \"model\" section");
    if (!in.parsed.ensemble)
        throw ConfigError("check-discrete needs a discrete \"ensemble\" section");
    const Lindbladian& model = *in.parsed.model;
    const DensityMatrix rho_ss = steady_state(model, in.tol.feasibility);
    const PRVerdict verdict =
        check_pr_discrete(model, *in.parsed.ensemble, rho_ss, in.discrete);
    exit_code = decision_exit(verdict.decision);

    json payload = verdict_payload(verdict, true);
    payload["tolerances"] = json{{"representation", in.discrete.representation_tol},
                                 {"feasibility", in.discrete.feasibility_tol},
                                 {"exclude_top_levels", in.discrete.exclude_top_levels}};
    if (cfg.validate_ergodics && verdict.decision == PRDecision::PR) {
        SimulationConfig sim = in.sim;
        default_jump_horizon(sim, mixing_rate(*verdict.certificate));
        payload["validation"] =
            validation_payload(validate_certificate(model, *in.parsed.ensemble, verdict, sim));
    }
    return payload;
}

json check_gaussian_impl(const Inputs& in, int& exit_code) {
    if (!in.parsed.dynamics)
        throw ConfigError("check-gaussian needs a \"dynamics\" section with K and D");
    if (!in.parsed.gaussian)
        throw ConfigError("check-gaussian needs an ensemble covariance V");
    const GaussianPRReport report =
        check_pr_gaussian(*in.parsed.dynamics, in.parsed.gaussian->covariance(), in.tol.psd);
    exit_code = report.decision == GaussianDecision::PR ? kExitPr : kExitNotPr;

    json payload{{"decision", report.decision == GaussianDecision::PR ? "PR" : "NOT_PR"},
                 {"min_eig_b", report.min_eig_b},
                 {"b_v", to_json(report.b_v.mat())},
                 {"notes", report.notes}};
    if (report.v_ss) payload["v_ss"] = to_json(report.v_ss->mat());
    if (report.u) payload["u"] = to_json(report.u->mat());
    if (report.representable) payload["representable"] = *report.representable;
    return payload;
}

json simulate_jump_impl(const RunConfig& cfg, Inputs& in, int& exit_code) {
    exit_code = kExitPr;
    if (in.parsed.rates) {
        if (!in.parsed.rate_weights)
            throw ConfigError("simulate-jump with direct \"rates\" needs initial \"weights\"");
        SimulationConfig sim = in.sim;
        default_jump_horizon(sim, mixing_rate(*in.parsed.rates));
        const OccupationStats stats = simulate_jump(*in.parsed.rates, *in.parsed.rate_weights, sim);
        json payload = occupation_payload(stats);
        payload["seed"] = sim.seed;
        payload["t_final"] = sim.t_final;
        payload["burn_in"] = sim.burn_in;
        return payload;
    }
    // otherwise: certificate route through the discrete check
    RunConfig with_validation = cfg;
    with_validation.validate_ergodics = true;
    return check_discrete_impl(with_validation, in, exit_code);
}

json simulate_diffusion_impl(Inputs& in, int& exit_code) {
    if (!in.parsed.dynamics)
        throw ConfigError("simulate-diffusion needs a \"dynamics\" section with K and D");
    if (!in.parsed.gaussian)
        throw ConfigError("simulate-diffusion needs an ensemble covariance V");
    const LinearDynamics& dyn = *in.parsed.dynamics;
    const RealSymmetricMatrix& v = in.parsed.gaussian->covariance();

    SimulationConfig sim = in.sim;
    const double knorm = drift_inf_norm(dyn.drift());
    if (sim.dt <= 0) sim.dt = 1e-3 / std::max(knorm, 1e-12);
    const double min_eig = min_real_eigenvalue(dyn.drift());
    if (min_eig <= 0)
        throw SingularDynamics("simulate-diffusion: drift must be Hurwitz");
    if (sim.t_final <= 0) sim.t_final = 1000.0 / min_eig;
    if (sim.burn_in <= 0) sim.burn_in = 10.0 / min_eig;

    const DiffusionStats stats = simulate_diffusion(dyn, v, sim);
    exit_code = kExitPr;
    json payload{{"empirical_mean", to_json(stats.empirical_mean)},
                 {"empirical_cov", to_json(stats.empirical_cov.mat())},
                 {"samples", stats.samples},
                 {"seed", sim.seed},
                 {"dt", sim.dt},
                 {"t_final", sim.t_final},
                 {"burn_in", sim.burn_in}};
    payload["stationary_weight_cov"] = to_json(weight_covariance(dyn, v).mat());
    return payload;
}

std::size_t default_truncation(double mu) {
    return static_cast<std::size_t>(std::ceil(mu + 8.0 * std::sqrt(mu)));
}

json preset_impl(const RunConfig& cfg, Inputs& in, int& exit_code) {
    if (cfg.preset_name == "atom-laser") {
        if (cfg.preset_mode == "gaussian") {
            const LinearizedAtomLaser laser = atom_laser_linearized(cfg.laser);
            in.parsed.dynamics = laser.dynamics;
            in.parsed.gaussian = GaussianEnsemble(laser.coherent_covariance);
            json payload = check_gaussian_impl(in, exit_code);
            payload["preset"] = json{{"name", "atom-laser"},
                                     {"mode", "gaussian"},
                                     {"mu", cfg.laser.mu},
                                     {"kappa", cfg.laser.kappa},
                                     {"chi", cfg.laser.chi},
                                     {"nu", cfg.laser.nu}};
            return payload;
        }
        if (cfg.preset_mode == "fock") {
            AtomLaserParams params = cfg.laser;
            if (!cfg.laser_nmax_set) params.nmax = default_truncation(params.mu);
            in.parsed.model = atom_laser_fock(params);
            const std::size_t dim = params.nmax + 1;
            if (cfg.preset_ensemble == "coherent") {
                in.parsed.ensemble = coherent_phase_ensemble(params.mu, cfg.phases, dim);
                // Phase discretization leaves O(mu^n/n!) truncation error, so
                // the representation gate loosens to 1e-6 unless overridden.
                if (!cfg.tol_representation) in.discrete.representation_tol = 1e-6;
            } else if (cfg.preset_ensemble == "number") {
                in.parsed.ensemble = number_poisson_ensemble(params.mu, dim);
            } else {
                throw ConfigError("preset atom-laser: ensemble must be \"number\" or \"coherent\"");
            }
            in.discrete.exclude_top_levels = 2; // truncated-Fock guard
            json payload = check_discrete_impl(cfg, in, exit_code);
            payload["preset"] = json{{"name", "atom-laser"}, {"mode", "fock"},
                                     {"mu", params.mu},     {"kappa", params.kappa},
                                     {"chi", params.chi},   {"nmax", params.nmax},
                                     {"ensemble", cfg.preset_ensemble},
                                     {"phases", cfg.phases}};
            std::vector<std::string> warnings = atom_laser_warnings(params);
            if (cfg.preset_ensemble == "coherent") {
                const auto extra = coherent_state_warnings(
                    Complex(std::sqrt(params.mu), 0.0), dim);
                warnings.insert(warnings.end(), extra.begin(), extra.end());
            }
            payload["warnings"] = warnings;
            return payload;
        }
        throw ConfigError("preset atom-laser: mode must be \"gaussian\" or \"fock\"");
    }
    if (cfg.preset_name == "two-level") {
        if (cfg.preset_check != "discrete")
            throw ConfigError("preset two-level supports only --check discrete "
                              "(it has no linearized phase-space model)");
        in.parsed.model = two_level_thermal(cfg.two_level);
        const double total = cfg.two_level.gamma_up + cfg.two_level.gamma_down;
        std::vector<PureState> states{PureState::basis(0, 2), PureState::basis(1, 2)};
        RealVector weights{cfg.two_level.gamma_down / total, cfg.two_level.gamma_up / total};
        in.parsed.ensemble = DiscreteEnsemble(std::move(states), std::move(weights));
        json payload = check_discrete_impl(cfg, in, exit_code);
        payload["preset"] = json{{"name", "two-level"},
                                 {"gamma_up", cfg.two_level.gamma_up},
                                 {"gamma_down", cfg.two_level.gamma_down}};
        return payload;
    }
    throw ConfigError("unknown preset \"" + cfg.preset_name + "\"");
}

std::string digest_source(const RunConfig& cfg, const std::string& raw_input) {
    if (cfg.input_path) return raw_input;
    std::ostringstream sig;
    sig << command_name(cfg.command);
    if (cfg.command == Command::Preset) {
        sig << " " << cfg.preset_name << " mode=" << cfg.preset_mode
            << " check=" << cfg.preset_check << " ensemble=" << cfg.preset_ensemble
            << " mu=" << cfg.laser.mu << " kappa=" << cfg.laser.kappa << " chi=" << cfg.laser.chi
            << " nu=" << cfg.laser.nu << " nmax=" << cfg.laser.nmax
            << " phases=" << cfg.phases << " gamma_up=" << cfg.two_level.gamma_up
            << " gamma_down=" << cfg.two_level.gamma_down;
    }
    return sig.str();
}

const char* error_kind(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const IoError*>(&e)) return "IoError";
    if (dynamic_cast<const InvalidInput*>(&e)) return "InvalidInput";
    if (dynamic_cast<const SingularDynamics*>(&e)) return "SingularDynamics";
    if (dynamic_cast<const NotPSD*>(&e)) return "NotPSD";
    if (dynamic_cast<const NonUniqueSteadyState*>(&e)) return "NonUniqueSteadyState";
    if (dynamic_cast<const Unsupported*>(&e)) return "Unsupported";
    return "Error";
}

} // namespace

RunOutcome run(const RunConfig& cfg) {
    RunOutcome outcome;
    outcome.report.command = command_name(cfg.command);
    outcome.report.tool = kToolName;
    outcome.report.version = kToolVersion;

    const auto started = std::chrono::steady_clock::now();
    try {
        std::string raw_input;
        Inputs in;
        if (cfg.input_path) {
            std::ifstream file(*cfg.input_path, std::ios::binary);
            if (!file) throw IoError("cannot open config file: " + *cfg.input_path);
            std::ostringstream buffer;
            buffer << file.rdbuf();
            raw_input = buffer.str();
            in.parsed = parse_config_text(raw_input);
        }
        outcome.report.input_digest = content_digest(digest_source(cfg, raw_input));
        apply_overrides(cfg, in);

        int exit_code = kExitError;
        switch (cfg.command) {
        case Command::CheckDiscrete:
            outcome.report.payload = check_discrete_impl(cfg, in, exit_code);
            break;
        case Command::CheckGaussian:
            outcome.report.payload = check_gaussian_impl(in, exit_code);
            break;
        case Command::SimulateJump:
            outcome.report.payload = simulate_jump_impl(cfg, in, exit_code);
            break;
        case Command::SimulateDiffusion:
            outcome.report.payload = simulate_diffusion_impl(in, exit_code);
            break;
        case Command::Preset:
            outcome.report.payload = preset_impl(cfg, in, exit_code);
            break;
        }
        outcome.exit_code = exit_code;
    } catch (const Error& e) {
        outcome.report.payload = json{{"error", json{{"type", error_kind(e)},
                                                     {"message", e.what()}}}};
        outcome.exit_code = kExitError;
        if (outcome.report.input_digest.empty())
            outcome.report.input_digest = content_digest("");
    } catch (const std::exception& e) {
        outcome.report.payload =
            json{{"error", json{{"type", "Internal"}, {"message", e.what()}}}};
        outcome.exit_code = kExitError;
        if (outcome.report.input_digest.empty())
            outcome.report.input_digest = content_digest("");
    }

    const auto finished = std::chrono::steady_clock::now();
    outcome.report.duration_seconds =
        std::chrono::duration<double>(finished - started).count();
    outcome.report.exit_code = outcome.exit_code;
    return outcome;
}

} // namespace prens
