#include "superatom/config.hpp"

#include <fstream>
#include <optional>

#include "superatom/errors.hpp"

namespace superatom {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field))
        throw ConfigError("missing field '" + field + "'");
    if (!j[field].is_number())
        throw ConfigError("field '" + field + "' must be a number");
    return j[field].get<double>();
}

double number_or(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number())
        throw ConfigError("field '" + field + "' must be a number");
    return j[field].get<double>();
}

int int_or(const json& j, const std::string& field, int fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_integer())
        throw ConfigError("field '" + field + "' must be an integer");
    return j[field].get<int>();
}

} // namespace

ArrayModel parse_array_model(const json& j) {
    if (!j.is_object()) throw ConfigError("array config must be a JSON object");

    if (j.contains("preset")) {
        if (!j["preset"].is_string())
            throw ConfigError("field 'preset' must be a string (A, B1 or B2)");
        DevicePreset preset;
        try {
            preset = device_preset_from_string(j["preset"].get<std::string>());
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        const double omega0 = ghz_to_rad(number_or(j, "omega0_ghz", 6.0));
        ArrayModel model = device_preset(preset, omega0);
        if (j.value("lossless", false)) model = model.without_free_space_loss();
        return model;
    }

    if (!j.contains("qubits") || !j["qubits"].is_array() || j["qubits"].empty())
        throw ConfigError("field 'qubits' must be a non-empty array");
    if (!j.contains("omega_ref_ghz"))
        throw ConfigError("missing field 'omega_ref_ghz'");

    WaveguideMedium medium;
    medium.velocity = number_or(j, "velocity_m_per_s", default_waveguide_velocity);
    medium.omega_ref = ghz_to_rad(require_number(j, "omega_ref_ghz"));

    const bool has_spacing_mm = j.contains("spacing_mm");
    const bool has_spacing_ratio = j.contains("spacing_ratio");
    bool has_positions = true;
    for (const json& q : j["qubits"])
        if (!q.contains("position_mm")) has_positions = false;

    const int sources = int(has_spacing_mm) + int(has_spacing_ratio) + int(has_positions);
    if (sources > 1)
        throw ConfigError("ambiguous geometry: give exactly one of per-qubit position_mm, "
                          "spacing_mm, or spacing_ratio");
    if (sources == 0)
        throw ConfigError("no geometry: give per-qubit position_mm on every qubit, or "
                          "spacing_mm, or spacing_ratio");

    double spacing_m = 0.0;
    if (has_spacing_mm) spacing_m = mm_to_m(require_number(j, "spacing_mm"));
    if (has_spacing_ratio)
        spacing_m = require_number(j, "spacing_ratio") * (two_pi * medium.velocity / medium.omega_ref);

    std::vector<Qubit> qubits;
    int index = 0;
    for (const json& qj : j["qubits"]) {
        Qubit q;
        q.omega = ghz_to_rad(require_number(qj, "omega_ghz"));
        q.gamma_wg = mhz_to_rad(require_number(qj, "gamma_wg_mhz"));
        q.gamma_nr = mhz_to_rad(require_number(qj, "gamma_nr_mhz"));
        q.position = has_positions ? mm_to_m(require_number(qj, "position_mm"))
                                   : index * spacing_m;
        qubits.push_back(q);
        ++index;
    }

    try {
        return ArrayModel(std::move(qubits), medium);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid array config: ") + e.what());
    }
}

json array_model_json(const ArrayModel& model) {
    json qubits = json::array();
    for (const Qubit& q : model.qubits()) {
        qubits.push_back({{"omega_ghz", rad_to_ghz(q.omega)},
                          {"gamma_wg_mhz", rad_to_mhz(q.gamma_wg)},
                          {"gamma_nr_mhz", rad_to_mhz(q.gamma_nr)},
                          {"position_mm", m_to_mm(q.position)}});
    }
    return {{"qubits", std::move(qubits)},
            {"velocity_m_per_s", model.medium().velocity},
            {"omega_ref_ghz", rad_to_ghz(model.medium().omega_ref)}};
}

GridSpec parse_probe_grid(const json& j) {
    if (!j.is_object()) throw ConfigError("probe grid must be a JSON object");
    GridSpec grid;
    grid.points = int_or(j, "points", 0);
    if (grid.points < 1) throw ConfigError("probe grid: field 'points' must be >= 1");
    if (j.contains("center_ghz")) {
        const double center = ghz_to_rad(require_number(j, "center_ghz"));
        const double half = 0.5 * mhz_to_rad(require_number(j, "span_mhz"));
        grid.start = center - half;
        grid.stop = center + half;
    } else {
        grid.start = ghz_to_rad(require_number(j, "start_ghz"));
        grid.stop = ghz_to_rad(require_number(j, "stop_ghz"));
    }
    if (!(grid.stop > grid.start) && grid.points > 1)
        throw ConfigError("probe grid: stop must exceed start");
    return grid;
}

namespace {

GridSpec parse_control_grid(const json& j) {
    if (!j.is_object()) throw ConfigError("control grid must be a JSON object");
    GridSpec grid;
    grid.points = int_or(j, "points", 0);
    if (grid.points < 1) throw ConfigError("control grid: field 'points' must be >= 1");
    if (j.contains("start_mhz") || j.contains("stop_mhz")) {
        grid.start = mhz_to_rad(require_number(j, "start_mhz"));
        grid.stop = mhz_to_rad(require_number(j, "stop_mhz"));
    } else {
        grid.start = ghz_to_rad(require_number(j, "start_ghz"));
        grid.stop = ghz_to_rad(require_number(j, "stop_ghz"));
    }
    return grid;
}

json control_grid_json(const GridSpec& grid, bool mhz) {
    if (mhz)
        return {{"start_mhz", rad_to_mhz(grid.start)},
                {"stop_mhz", rad_to_mhz(grid.stop)},
                {"points", grid.points}};
    return {{"start_ghz", rad_to_ghz(grid.start)},
            {"stop_ghz", rad_to_ghz(grid.stop)},
            {"points", grid.points}};
}

} // namespace

ScatterMethod scatter_method_from_string(const std::string& name) {
    if (name == "resolvent") return ScatterMethod::Resolvent;
    if (name == "modes") return ScatterMethod::Modes;
    if (name == "tmatrix") return ScatterMethod::TransferMatrix;
    throw ConfigError("unknown method '" + name + "' (expected resolvent, modes or tmatrix)");
}

std::string to_string(ScatterMethod method) {
    switch (method) {
    case ScatterMethod::Resolvent: return "resolvent";
    case ScatterMethod::Modes: return "modes";
    case ScatterMethod::TransferMatrix: return "tmatrix";
    }
    return "?";
}

PhaseConvention phase_convention_from_string(const std::string& name) {
    if (name == "markov") return PhaseConvention::Markov;
    if (name == "dispersive") return PhaseConvention::Dispersive;
    throw ConfigError("unknown convention '" + name + "' (expected markov or dispersive)");
}

std::string to_string(PhaseConvention convention) {
    return convention == PhaseConvention::Markov ? "markov" : "dispersive";
}

ScenarioSpec parse_scenario_spec(const json& j) {
    if (!j.is_object()) throw ConfigError("scenario spec must be a JSON object");
    ScenarioSpec spec;
    if (!j.contains("scenario") || !j["scenario"].is_string())
        throw ConfigError("missing field 'scenario'");
    spec.name = j["scenario"].get<std::string>();
    spec.variant = j.value("variant", std::string{});

    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw ConfigError("field 'preset' must be a string");
        spec.preset = j["preset"].get<std::string>();
    } else if (j.contains("array")) {
        spec.array = parse_array_model(j["array"]);
    }
    // the eigenstate-tracking figure is computed without free-space loss
    spec.lossless = j.value("lossless", spec.name == "smfig_s4");

    if (j.contains("omega0_ghz")) spec.omega0 = ghz_to_rad(require_number(j, "omega0_ghz"));
    if (j.contains("probe")) spec.probe = parse_probe_grid(j["probe"]);
    if (j.contains("control")) spec.control = parse_control_grid(j["control"]);
    spec.n_max = int_or(j, "n_max", 0);
    const int qubit_label = int_or(j, "detune_qubit", 0);  // 1-based, like the Q labels
    spec.detune_qubit = qubit_label > 0 ? qubit_label - 1 : -1;
    if (j.contains("offsets")) {
        if (!j["offsets"].is_array()) throw ConfigError("field 'offsets' must be an array");
        for (const json& v : j["offsets"]) spec.offsets.push_back(v.get<double>());
    }
    if (j.contains("omega0_list_ghz")) {
        if (!j["omega0_list_ghz"].is_array())
            throw ConfigError("field 'omega0_list_ghz' must be an array");
        for (const json& v : j["omega0_list_ghz"])
            spec.omega0_list.push_back(ghz_to_rad(v.get<double>()));
    }
    if (j.contains("method"))
        spec.method = scatter_method_from_string(j["method"].get<std::string>());
    if (j.contains("convention"))
        spec.convention = phase_convention_from_string(j["convention"].get<std::string>());
    return spec;
}

json scenario_spec_json(const ScenarioSpec& spec) {
    json j;
    j["scenario"] = spec.name;
    if (!spec.variant.empty()) j["variant"] = spec.variant;
    if (spec.preset) j["preset"] = *spec.preset;
    else if (spec.array) j["array"] = array_model_json(*spec.array);
    if (spec.lossless) j["lossless"] = true;
    if (spec.omega0 > 0.0) j["omega0_ghz"] = rad_to_ghz(spec.omega0);
    if (spec.probe.points > 0)
        j["probe"] = {{"start_ghz", rad_to_ghz(spec.probe.start)},
                      {"stop_ghz", rad_to_ghz(spec.probe.stop)},
                      {"points", spec.probe.points}};
    if (spec.control.points > 0)
        j["control"] = control_grid_json(spec.control, spec.name == "gradient_detuning" ||
                                                           spec.variant == "gradient" ||
                                                           spec.name == "fig4");
    if (spec.n_max > 0) j["n_max"] = spec.n_max;
    if (spec.detune_qubit >= 0) j["detune_qubit"] = spec.detune_qubit + 1;
    if (!spec.offsets.empty()) j["offsets"] = spec.offsets;
    if (!spec.omega0_list.empty()) {
        json list = json::array();
        for (double w : spec.omega0_list) list.push_back(rad_to_ghz(w));
        j["omega0_list_ghz"] = std::move(list);
    }
    j["method"] = to_string(spec.method);
    j["convention"] = to_string(spec.convention);
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
}

} // namespace superatom
