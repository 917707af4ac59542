#include "superatom/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "superatom/errors.hpp"
#include "superatom/linalg.hpp"
#include "superatom/parallel.hpp"

namespace superatom {

namespace {

// Idle qubits are parked this many mean linewidths above resonance: far
// enough that their dispersive pull on |t| is below 1e-4, close enough
// that the fixed-phase approximation is untouched.
constexpr double far_detuning_factor = 200.0;

std::vector<ScatteringPoint> evaluate_row(const ArrayModel& model,
                                          const std::vector<double>& probe,
                                          ScatterMethod method, PhaseConvention convention,
                                          int threads) {
    std::vector<ScatteringPoint> row(probe.size());
    switch (method) {
    case ScatterMethod::Resolvent: {
        const EffectiveHamiltonian h = build_h_eff(model);
        parallel_for(probe.size(), threads,
                     [&](std::size_t i) { row[i] = scatter_resolvent(h, probe[i]); });
        break;
    }
    case ScatterMethod::Modes: {
        const ComplexSpectrum spec = eigendecompose(build_h_eff(model).matrix);
        parallel_for(probe.size(), threads,
                     [&](std::size_t i) { row[i] = scatter_modes(spec, model, probe[i]); });
        break;
    }
    case ScatterMethod::TransferMatrix:
        parallel_for(probe.size(), threads, [&](std::size_t i) {
            row[i] = scatter_transfer_matrix(model, probe[i], convention);
        });
        break;
    }
    return row;
}

GridSpec default_probe(const ArrayModel& device, double omega0, double half_span_in_gamma,
                       int points) {
    const double span = half_span_in_gamma * device.mean_gamma_wg();
    return GridSpec{omega0 - span, omega0 + span, points};
}

ScenarioSpec base_spec(std::string name, const ArrayModel& device, double omega0,
                       const SweepOptions& options, const GridSpec& probe) {
    ScenarioSpec spec;
    spec.name = std::move(name);
    spec.array = device;
    spec.omega0 = omega0;
    spec.probe = probe;
    spec.method = options.method;
    spec.convention = options.convention;
    return spec;
}

} // namespace

std::vector<double> GridSpec::values() const {
    if (points < 1) throw std::domain_error("grid: need at least one point");
    if (points == 1) return {start};
    if (!(stop > start)) throw std::domain_error("grid: stop must exceed start");
    std::vector<double> v(static_cast<std::size_t>(points));
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = start + step * i;
    return v;
}

SpectralCurve SweepResult::curve(std::size_t control_index, CurveTag tag) const {
    const std::vector<ScatteringPoint>& row = points.at(control_index);
    SpectralCurve c;
    c.grid = probe;
    c.tag = tag;
    c.values.reserve(row.size());
    for (const ScatteringPoint& p : row) {
        switch (tag) {
        case CurveTag::AbsT: c.values.push_back(std::abs(p.t)); break;
        case CurveTag::AbsT2: c.values.push_back(std::norm(p.t)); break;
        case CurveTag::AbsR: c.values.push_back(std::abs(p.r)); break;
        }
    }
    return c;
}

SweepResult successive_resonance(const ArrayModel& device, double omega0, int n_max,
                                 const SweepOptions& options) {
    if (n_max < 1 || n_max > device.size())
        throw std::domain_error("successive_resonance: n_max out of range");
    const GridSpec probe = options.probe.points > 0
                               ? options.probe
                               : default_probe(device, omega0, 120.0, 6000);
    const double parked = omega0 + far_detuning_factor * device.mean_gamma_wg();

    SweepResult result;
    result.scenario_id = "successive_resonance";
    result.control.name = "N";
    result.control.unit = "count";
    result.probe = probe.values();
    for (int n = 1; n <= n_max; ++n) {
        ArrayModel model = device;
        for (int i = 0; i < device.size(); ++i)
            model = model.with_qubit_frequency(i, i < n ? omega0 : parked);
        result.control.values.push_back(static_cast<double>(n));
        result.points.push_back(
            evaluate_row(model, result.probe, options.method, options.convention,
                         options.threads));
    }
    result.spec = base_spec("successive_resonance", device, omega0, options, probe);
    result.spec.n_max = n_max;
    return result;
}

SweepResult detune_one_qubit(const ArrayModel& device, double omega0, int which,
                             const GridSpec& frequencies, const SweepOptions& options) {
    if (which < 0 || which >= device.size())
        throw std::domain_error("detune_one_qubit: qubit index out of range");
    const GridSpec probe = options.probe.points > 0
                               ? options.probe
                               : default_probe(device, omega0, 12.0, 2400);
    const ArrayModel resonant = device.with_all_frequencies(omega0);

    SweepResult result;
    result.scenario_id = "detune_one_qubit";
    result.control.name = "omega_q" + std::to_string(which + 1);
    result.control.unit = "ghz";
    result.control.values = frequencies.values();
    result.probe = probe.values();
    for (double freq : result.control.values) {
        const ArrayModel model = resonant.with_qubit_frequency(which, freq);
        result.points.push_back(
            evaluate_row(model, result.probe, options.method, options.convention,
                         options.threads));
    }
    result.mode_track =
        track_modes(resonant, qubit_frequency_sweep(which, result.control.values), omega0);

    result.spec = base_spec("detune_one_qubit", device, omega0, options, probe);
    result.spec.control = frequencies;
    result.spec.detune_qubit = which;
    return result;
}

SweepResult gradient_detuning(const ArrayModel& device, double omega0,
                              const std::vector<double>& offsets, const GridSpec& deltas,
                              const SweepOptions& options) {
    if (static_cast<int>(offsets.size()) != device.size())
        throw std::domain_error("gradient_detuning: need one offset per qubit");
    const GridSpec probe = options.probe.points > 0
                               ? options.probe
                               : default_probe(device, omega0, 8.0, 3200);

    SweepResult result;
    result.scenario_id = "gradient_detuning";
    result.control.name = "delta";
    result.control.unit = "mhz";
    result.control.values = deltas.values();
    result.probe = probe.values();
    for (double delta : result.control.values) {
        ArrayModel model = device;
        for (int i = 0; i < device.size(); ++i)
            model = model.with_qubit_frequency(
                i, omega0 + offsets[static_cast<std::size_t>(i)] * delta);
        result.points.push_back(
            evaluate_row(model, result.probe, options.method, options.convention,
                         options.threads));
    }
    result.spec = base_spec("gradient_detuning", device, omega0, options, probe);
    result.spec.control = deltas;
    result.spec.offsets = offsets;
    return result;
}

SweepResult effective_spacing_sweep(const ArrayModel& device,
                                    const std::vector<double>& omega0_list,
                                    const SweepOptions& options) {
    if (omega0_list.empty())
        throw std::domain_error("effective_spacing_sweep: empty frequency list");
    const double omega_mid = omega0_list[omega0_list.size() / 2];
    const GridSpec probe = options.probe.points > 0
                               ? options.probe
                               : default_probe(device, omega_mid, 12.0, 2400);

    SweepResult result;
    result.scenario_id = "effective_spacing_sweep";
    result.control.name = "omega0";
    result.control.unit = "ghz";
    result.control.values = omega0_list;
    result.probe = probe.values();
    for (double omega0 : omega0_list) {
        const ArrayModel model = device.with_all_frequencies(omega0).with_reference(omega0);
        result.points.push_back(
            evaluate_row(model, result.probe, options.method, options.convention,
                         options.threads));
    }
    result.spec = base_spec("effective_spacing_sweep", device, omega_mid, options, probe);
    result.spec.omega0_list = omega0_list;
    return result;
}

std::vector<double> bragg_gradient_offsets(int n) {
    std::vector<double> offsets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        offsets[static_cast<std::size_t>(i)] = i - 0.5 * (n - 1);
    return offsets;
}

std::vector<double> antibragg_gradient_offsets(int n) {
    std::vector<double> offsets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        offsets[static_cast<std::size_t>(i)] = i - 0.5 * (n - 1) + 0.5;
    return offsets;
}

namespace {

ArrayModel resolve_device(const ScenarioSpec& spec, double omega0) {
    ArrayModel model = spec.preset ? device_preset(device_preset_from_string(*spec.preset), omega0)
                       : spec.array ? *spec.array
                                    : throw ConfigError("scenario: no device given "
                                                        "(need 'preset' or 'array')");
    if (spec.lossless) model = model.without_free_space_loss();
    return model;
}

} // namespace

SweepResult run_scenario(const ScenarioSpec& spec, int threads) {
    SweepOptions options;
    options.probe = spec.probe;
    options.method = spec.method;
    options.convention = spec.convention;
    options.threads = threads;

    double omega0 = spec.omega0;
    if (omega0 <= 0.0) {
        if (spec.array)
            omega0 = spec.array->medium().omega_ref;
        else
            omega0 = ghz_to_rad(6.0);  // exact Bragg/anti-Bragg spacing for the presets
    }
    const ArrayModel device = resolve_device(spec, omega0);
    const double gamma_bar = device.mean_gamma_wg();

    std::string kind = spec.name;
    if (kind == "fig2") kind = "successive_resonance";
    else if (kind == "fig3") kind = spec.variant == "gradient" ? "gradient_detuning" : "detune_one_qubit";
    else if (kind == "fig4") kind = spec.variant == "detune" ? "detune_one_qubit" : "gradient_detuning";
    else if (kind == "fig5") kind = "effective_spacing_sweep";
    else if (kind == "smfig_s4") kind = "detune_one_qubit";

    SweepResult result;
    if (kind == "successive_resonance") {
        const int n_max = spec.n_max > 0 ? spec.n_max : device.size();
        result = successive_resonance(device, omega0, n_max, options);
    } else if (kind == "detune_one_qubit") {
        const int which = spec.detune_qubit >= 0 ? spec.detune_qubit : device.size() - 1;
        GridSpec control = spec.control;
        if (control.points <= 0) {
            const double span = 3.0 * gamma_bar;
            control = GridSpec{omega0 - span, omega0 + span, 121};
        }
        result = detune_one_qubit(device, omega0, which, control, options);
    } else if (kind == "gradient_detuning") {
        std::vector<double> offsets = spec.offsets;
        if (offsets.empty())
            offsets = spec.name == "fig4" ? antibragg_gradient_offsets(device.size())
                                          : bragg_gradient_offsets(device.size());
        GridSpec control = spec.control;
        if (control.points <= 0) control = GridSpec{0.0, gamma_bar, 9};
        result = gradient_detuning(device, omega0, offsets, control, options);
    } else if (kind == "effective_spacing_sweep") {
        std::vector<double> list = spec.omega0_list;
        if (list.empty())
            for (double f = 5.7; f < 6.35; f += 0.1) list.push_back(ghz_to_rad(f));
        result = effective_spacing_sweep(device, list, options);
    } else {
        throw ConfigError("unknown scenario '" + spec.name + "'");
    }

    // Preserve the caller's naming/preset so the stored spec regenerates
    // this exact result.
    result.scenario_id = spec.name;
    ScenarioSpec resolved = result.spec;
    resolved.name = spec.name;
    resolved.variant = spec.variant;
    if (spec.preset) {
        resolved.preset = spec.preset;
        resolved.array.reset();
        resolved.lossless = spec.lossless;
    }
    result.spec = resolved;
    return result;
}

} // namespace superatom
