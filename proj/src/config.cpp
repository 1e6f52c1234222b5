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

#include "prens/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace prens {

namespace {

using nlohmann::json;

double number_at(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError("expected a number", where);
    return j.get<double>();
}

Complex complex_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("expected a complex number as [re, im]", where);
    return Complex(j[0].get<double>(), j[1].get<double>());
}

RealMatrix real_matrix_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError("expected a non-empty matrix", where);
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw ConfigError("expected a nested row-major array", where + "/0");
    const std::size_t cols = j[0].size();
    RealMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_loc = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != cols)
            throw ConfigError("ragged matrix row", row_loc);
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = number_at(j[i][c], row_loc + "/" + std::to_string(c));
    }
    return m;
}

ComplexMatrix complex_matrix_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError("expected a non-empty matrix", where);
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw ConfigError("expected a nested row-major array", where + "/0");
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_loc = where + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != cols)
            throw ConfigError("ragged matrix row", row_loc);
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = complex_at(j[i][c], row_loc + "/" + std::to_string(c));
    }
    return m;
}

RealVector real_vector_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError("expected a non-empty vector", where);
    RealVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = number_at(j[i], where + "/" + std::to_string(i));
    return v;
}

ComplexVector complex_vector_at(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError("expected a non-empty vector", where);
    ComplexVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = complex_at(j[i], where + "/" + std::to_string(i));
    return v;
}

/// Re-raises library-side validation failures as ConfigError so callers get
/// a consistent exception with a file location.
template <typename Fn>
auto located(Fn&& fn, const std::string& where) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what(), where);
    }
}

void parse_model(const json& j, ParsedConfig& out) {
    if (!j.is_object()) throw ConfigError("expected an object", "/model");
    ComplexMatrix h = complex_matrix_at(j.at("hamiltonian"), "/model/hamiltonian");
    if (j.contains("dim")) {
        const auto dim = static_cast<std::size_t>(number_at(j.at("dim"), "/model/dim"));
        if (dim != h.rows()) throw ConfigError("dim does not match the Hamiltonian", "/model/dim");
    }
    std::vector<ComplexMatrix> jumps;
    if (j.contains("jumps")) {
        const json& arr = j.at("jumps");
        if (!arr.is_array()) throw ConfigError("expected an array of matrices", "/model/jumps");
        for (std::size_t i = 0; i < arr.size(); ++i)
            jumps.push_back(complex_matrix_at(arr[i], "/model/jumps/" + std::to_string(i)));
    }
    out.model = located([&] { return Lindbladian(std::move(h), std::move(jumps)); }, "/model");
}

void parse_ensemble(const json& j, ParsedConfig& out) {
    if (!j.is_object()) throw ConfigError("expected an object", "/ensemble");
    const std::string type = j.contains("type") ? j.at("type").get<std::string>() : "discrete";
    if (type == "gaussian") {
        out.gaussian = located(
            [&] {
                return GaussianEnsemble(
                    RealSymmetricMatrix(real_matrix_at(j.at("V"), "/ensemble/V")));
            },
            "/ensemble/V");
        return;
    }
    if (type != "discrete")
        throw ConfigError("ensemble type must be \"discrete\" or \"gaussian\"", "/ensemble/type");
    if (!j.contains("states") || !j.at("states").is_array() || j.at("states").empty())
        throw ConfigError("discrete ensemble needs a non-empty states array", "/ensemble/states");
    std::vector<PureState> states;
    for (std::size_t i = 0; i < j.at("states").size(); ++i) {
        const std::string loc = "/ensemble/states/" + std::to_string(i);
        states.push_back(
            located([&] { return PureState(complex_vector_at(j.at("states")[i], loc)); }, loc));
    }
    RealVector weights = real_vector_at(j.at("weights"), "/ensemble/weights");
    out.ensemble = located(
        [&] { return DiscreteEnsemble(std::move(states), std::move(weights)); },
        "/ensemble/weights");
}

void parse_dynamics(const json& k, const json& d, ParsedConfig& out, const std::string& base) {
    RealMatrix drift = real_matrix_at(k, base + "/K");
    RealSymmetricMatrix diffusion = located(
        [&] { return RealSymmetricMatrix(real_matrix_at(d, base + "/D")); }, base + "/D");
    out.dynamics = located(
        [&] { return LinearDynamics(std::move(drift), std::move(diffusion)); }, base);
}

void parse_simulation(const json& j, ParsedConfig& out) {
    if (!j.is_object()) throw ConfigError("expected an object", "/simulation");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw ConfigError("seed must be a nonnegative integer", "/simulation/seed");
        out.simulation.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("t_final"))
        out.simulation.t_final = number_at(j.at("t_final"), "/simulation/t_final");
    if (j.contains("dt")) out.simulation.dt = number_at(j.at("dt"), "/simulation/dt");
    if (j.contains("burn_in"))
        out.simulation.burn_in = number_at(j.at("burn_in"), "/simulation/burn_in");
    if (j.contains("trajectories")) {
        if (!j.at("trajectories").is_number_unsigned() ||
            j.at("trajectories").get<std::uint64_t>() == 0)
            throw ConfigError("trajectories must be a positive integer",
                              "/simulation/trajectories");
        out.simulation.trajectories = j.at("trajectories").get<std::size_t>();
    }
    out.has_simulation = true;
}

ParsedConfig parse_document(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object", "/");
    static const char* known[] = {"model",  "ensemble",   "dynamics", "rates", "weights",
                                  "K",      "D",          "V",        "tolerances",
                                  "simulation"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown key \"" + key + "\"", "/" + key);
    }

    ParsedConfig out;
    if (doc.contains("model")) parse_model(doc.at("model"), out);
    if (doc.contains("ensemble")) parse_ensemble(doc.at("ensemble"), out);

    if (doc.contains("dynamics")) {
        const json& dyn = doc.at("dynamics");
        if (!dyn.is_object() || !dyn.contains("K") || !dyn.contains("D"))
            throw ConfigError("dynamics needs \"K\" and \"D\"", "/dynamics");
        parse_dynamics(dyn.at("K"), dyn.at("D"), out, "/dynamics");
    } else if (doc.contains("K") || doc.contains("D")) {
        if (!doc.contains("K") || !doc.contains("D"))
            throw ConfigError("top-level dynamics shorthand needs both \"K\" and \"D\"", "/");
        parse_dynamics(doc.at("K"), doc.at("D"), out, "");
    }
    if (doc.contains("V") && !out.gaussian) {
        out.gaussian = located(
            [&] { return GaussianEnsemble(RealSymmetricMatrix(real_matrix_at(doc.at("V"), "/V"))); },
            "/V");
    }

    if (doc.contains("rates")) {
        out.rates = located(
            [&] { return RateMatrix(real_matrix_at(doc.at("rates"), "/rates")); }, "/rates");
        if (doc.contains("weights"))
            out.rate_weights = real_vector_at(doc.at("weights"), "/weights");
    }

    if (doc.contains("tolerances")) {
        const json& tol = doc.at("tolerances");
        if (!tol.is_object()) throw ConfigError("expected an object", "/tolerances");
        if (tol.contains("representation"))
            out.tolerances.representation =
                number_at(tol.at("representation"), "/tolerances/representation");
        if (tol.contains("feasibility"))
            out.tolerances.feasibility = number_at(tol.at("feasibility"), "/tolerances/feasibility");
        if (tol.contains("psd")) out.tolerances.psd = number_at(tol.at("psd"), "/tolerances/psd");
    }
    if (doc.contains("simulation")) parse_simulation(doc.at("simulation"), out);
    return out;
}

} // namespace

ParsedConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what(), "/");
    }
    try {
        return parse_document(doc);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("schema violation: ") + e.what(), "/");
    }
}

ParsedConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

} // namespace prens
