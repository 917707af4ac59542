// Command-line front end: spectra, sweeps, eigenvalues, fits and
// cross-method verification, emitted as CSV or JSON.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "superatom/config.hpp"
#include "superatom/errors.hpp"
#include "superatom/io.hpp"
#include "superatom/linalg.hpp"
#include "superatom/parallel.hpp"
#include "superatom/scattering.hpp"
#include "superatom/scenarios.hpp"

namespace {

using namespace superatom;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;   // verification/analysis failure
constexpr int exit_config = 2;    // configuration error

struct CommonOptions {
    std::string config_path;
    std::string input_path;
    std::string out_path;
    std::string format = "csv";
    std::string method;
    std::string convention;
    int threads = 0;
    bool no_meta = false;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

GridSpec probe_or_default(const json& cfg, const ArrayModel& model) {
    if (cfg.contains("probe")) return parse_probe_grid(cfg.at("probe"));
    const double span = 12.0 * model.mean_gamma_wg();
    const double center = model.medium().omega_ref;
    return GridSpec{center - span, center + span, 2400};
}

std::vector<ScatteringPoint> compute_spectrum(const ArrayModel& model,
                                              const std::vector<double>& grid,
                                              ScatterMethod method,
                                              PhaseConvention convention, int threads) {
    std::vector<ScatteringPoint> points(grid.size());
    switch (method) {
    case ScatterMethod::Resolvent: {
        const EffectiveHamiltonian h = build_h_eff(model);
        parallel_for(grid.size(), threads,
                     [&](std::size_t i) { points[i] = scatter_resolvent(h, grid[i]); });
        break;
    }
    case ScatterMethod::Modes: {
        const ComplexSpectrum spec = eigendecompose(build_h_eff(model).matrix);
        parallel_for(grid.size(), threads,
                     [&](std::size_t i) { points[i] = scatter_modes(spec, model, grid[i]); });
        break;
    }
    case ScatterMethod::TransferMatrix:
        parallel_for(grid.size(), threads, [&](std::size_t i) {
            points[i] = scatter_transfer_matrix(model, grid[i], convention);
        });
        break;
    }
    return points;
}

int cmd_spectrum(const CommonOptions& opt) {
    const json cfg = load_json_file(opt.config_path);
    const ArrayModel model = parse_array_model(cfg);
    const GridSpec probe = probe_or_default(cfg, model);
    const ScatterMethod method = opt.method.empty()
                                     ? ScatterMethod::Resolvent
                                     : scatter_method_from_string(opt.method);
    const PhaseConvention convention = opt.convention.empty()
                                           ? PhaseConvention::Markov
                                           : phase_convention_from_string(opt.convention);

    const std::vector<ScatteringPoint> points =
        compute_spectrum(model, probe.values(), method, convention, opt.threads);

    const json meta = run_metadata("spectrum", json{{"config", opt.config_path},
                                                    {"method", to_string(method)},
                                                    {"convention", to_string(convention)}});
    std::ostringstream text;
    if (opt.format == "json")
        text << spectrum_json(points, meta, opt.no_meta).dump(2) << '\n';
    else
        write_spectrum_csv(text, points, meta, opt.no_meta);
    write_text(opt.out_path, text.str());
    return exit_ok;
}

int cmd_eigen(const CommonOptions& opt) {
    const json cfg = load_json_file(opt.config_path);
    const ArrayModel model = parse_array_model(cfg);
    const ComplexSpectrum spec = eigendecompose(build_h_eff(model).matrix);

    std::ostringstream text;
    if (opt.format == "json") {
        json modes = json::array();
        for (int n = 0; n < spec.size(); ++n) {
            modes.push_back({{"re_omega_ghz", rad_to_ghz(spec.eigenvalues[n].real())},
                             {"im_omega_mhz", rad_to_mhz(spec.eigenvalues[n].imag())},
                             {"decay_mhz", rad_to_mhz(-2.0 * spec.eigenvalues[n].imag())},
                             {"near_degenerate",
                              spec.near_degenerate[static_cast<std::size_t>(n)]}});
        }
        text << json{{"modes", std::move(modes)}}.dump(2) << '\n';
    } else {
        text << "mode,re_omega_ghz,im_omega_mhz,decay_mhz,near_degenerate\n";
        for (int n = 0; n < spec.size(); ++n) {
            text << n << ',' << format_double(rad_to_ghz(spec.eigenvalues[n].real())) << ','
                 << format_double(rad_to_mhz(spec.eigenvalues[n].imag())) << ','
                 << format_double(rad_to_mhz(-2.0 * spec.eigenvalues[n].imag())) << ','
                 << (spec.near_degenerate[static_cast<std::size_t>(n)] ? 1 : 0) << '\n';
        }
    }
    write_text(opt.out_path, text.str());
    return exit_ok;
}

int cmd_fit(const CommonOptions& opt) {
    std::ifstream in(opt.input_path);
    if (!in) throw ConfigError("cannot open '" + opt.input_path + "'");
    const std::vector<ScatteringPoint> points = read_spectrum_csv(in);

    std::vector<double> omega;
    std::vector<cdouble> t;
    omega.reserve(points.size());
    t.reserve(points.size());
    for (const ScatteringPoint& p : points) {
        omega.push_back(p.omega_p);
        t.push_back(p.t);
    }
    const SingleQubitFit fit = fit_single_qubit(omega, t);

    const json j{{"gamma_wg_mhz", rad_to_mhz(fit.gamma_wg)},
                 {"gamma_nr_mhz", rad_to_mhz(fit.gamma_nr)},
                 {"omega_center_ghz", rad_to_ghz(fit.omega_center)},
                 {"residual", fit.residual}};
    write_text(opt.out_path, j.dump(2) + "\n");
    return exit_ok;
}

int cmd_verify(const CommonOptions& opt) {
    const json cfg = load_json_file(opt.config_path);
    const ArrayModel model = parse_array_model(cfg);
    const GridSpec probe = probe_or_default(cfg, model);
    const PhaseConvention convention = opt.convention.empty()
                                           ? PhaseConvention::Markov
                                           : phase_convention_from_string(opt.convention);

    const std::vector<double> grid = probe.values();
    const EffectiveHamiltonian h = build_h_eff(model);

    double max_dt = 0.0, max_dr = 0.0, max_unitarity = 0.0;
    double worst_dt_freq = 0.0, worst_dr_freq = 0.0, worst_unitarity_freq = 0.0;
    bool lossless = true;
    for (const Qubit& q : model.qubits())
        if (q.gamma_nr > 0.0) lossless = false;

    std::vector<ScatteringPoint> res(grid.size()), tm(grid.size());
    parallel_for(grid.size(), opt.threads, [&](std::size_t i) {
        res[i] = scatter_resolvent(h, grid[i]);
        tm[i] = scatter_transfer_matrix(model, grid[i], convention);
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dt = std::abs(res[i].t - tm[i].t);
        const double dr = std::abs(res[i].r - tm[i].r);
        const double power = std::norm(res[i].t) + std::norm(res[i].r);
        const double defect = lossless ? std::abs(power - 1.0) : std::max(power - 1.0, 0.0);
        if (dt > max_dt) { max_dt = dt; worst_dt_freq = grid[i]; }
        if (dr > max_dr) { max_dr = dr; worst_dr_freq = grid[i]; }
        if (defect > max_unitarity) { max_unitarity = defect; worst_unitarity_freq = grid[i]; }
    }

    const bool ok = max_dt <= 1e-9 && max_dr <= 1e-9 && max_unitarity <= 1e-10;
    std::cout << "verify: resolvent vs transfer matrix (" << to_string(convention) << "), "
              << grid.size() << " points\n";
    std::cout << "  max |dt| = " << max_dt << " at " << format_double(rad_to_ghz(worst_dt_freq))
              << " GHz (limit 1e-9)\n";
    std::cout << "  max |dr| = " << max_dr << " at " << format_double(rad_to_ghz(worst_dr_freq))
              << " GHz (limit 1e-9)\n";
    std::cout << "  " << (lossless ? "unitarity defect" : "passivity excess") << " = "
              << max_unitarity << " at " << format_double(rad_to_ghz(worst_unitarity_freq))
              << " GHz (limit 1e-10)\n";
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? exit_ok : exit_failure;
}

int cmd_scenario(const CommonOptions& opt) {
    const json cfg = load_json_file(opt.config_path);
    ScenarioSpec spec = parse_scenario_spec(cfg);
    if (!opt.method.empty()) spec.method = scatter_method_from_string(opt.method);
    if (!opt.convention.empty())
        spec.convention = phase_convention_from_string(opt.convention);

    const SweepResult result = run_scenario(spec, opt.threads);
    const json sidecar = analysis_sidecar(result);

    if (opt.format == "json") {
        json j = sweep_json(result, opt.no_meta);
        j["analysis"] = sidecar;
        write_text(opt.out_path, j.dump(2) + "\n");
        return exit_ok;
    }

    std::ostringstream text;
    write_sweep_csv(text, result, opt.no_meta);
    write_text(opt.out_path, text.str());

    std::string sidecar_path = opt.out_path;
    const std::size_t dot = sidecar_path.find_last_of('.');
    if (dot != std::string::npos) sidecar_path.resize(dot);
    sidecar_path += ".analysis.json";
    write_text(sidecar_path, sidecar.dump(2) + "\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D superatom simulator: collective spectra and single-photon "
                 "transport for qubit arrays coupled to a waveguide"};
    app.require_subcommand(1);

    CommonOptions opt;

    auto add_common = [&](CLI::App* sub, bool with_method) {
        sub->add_option("--out", opt.out_path, "output path (default: stdout)");
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        if (with_method)
            sub->add_option("--method", opt.method, "resolvent, modes or tmatrix")
                ->check(CLI::IsMember({"resolvent", "modes", "tmatrix"}));
        sub->add_option("--convention", opt.convention, "markov or dispersive")
            ->check(CLI::IsMember({"markov", "dispersive"}));
        sub->add_option("--threads", opt.threads, "worker threads (default: all)");
        sub->add_flag("--no-meta", opt.no_meta, "omit timestamps/metadata from outputs");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "t/r spectrum of an array config");
    spectrum->add_option("--config", opt.config_path, "array config JSON")->required();
    add_common(spectrum, true);

    CLI::App* sweep = app.add_subcommand("sweep", "run a scenario spec file");
    sweep->add_option("--config", opt.config_path, "scenario spec JSON")->required();
    add_common(sweep, true);
    sweep->get_option("--out")->required();

    CLI::App* scenario =
        app.add_subcommand("scenario", "run a named scenario (fig2..fig5, smfig_s4)");
    scenario->add_option("--config", opt.config_path, "scenario spec JSON")->required();
    add_common(scenario, true);
    scenario->get_option("--out")->required();

    CLI::App* eigen = app.add_subcommand("eigen", "complex eigenvalues of the array");
    eigen->add_option("--config", opt.config_path, "array config JSON")->required();
    add_common(eigen, false);

    CLI::App* fit = app.add_subcommand("fit", "extract single-qubit parameters from a "
                                              "complex transmission CSV");
    fit->add_option("input", opt.input_path, "spectrum CSV with omega_p_ghz, re_t, im_t")
        ->required();
    add_common(fit, false);

    CLI::App* verify =
        app.add_subcommand("verify", "cross-check resolvent against transfer matrix");
    verify->add_option("--config", opt.config_path, "array config JSON")->required();
    add_common(verify, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(opt);
        if (sweep->parsed() || scenario->parsed()) return cmd_scenario(opt);
        if (eigen->parsed()) return cmd_eigen(opt);
        if (fit->parsed()) return cmd_fit(opt);
        if (verify->parsed()) return cmd_verify(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_config;
}
