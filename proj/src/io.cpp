#include "superatom/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "superatom/config.hpp"
#include "superatom/errors.hpp"

namespace superatom {

using nlohmann::json;

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

void write_meta_comments(std::ostream& out, const json& meta) {
    for (auto it = meta.begin(); it != meta.end(); ++it)
        out << "# " << it.key() << ": "
            << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
            << "\n";
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

nlohmann::json run_metadata(const std::string& command, const json& config_echo) {
    return {{"command", command}, {"generated", timestamp_utc()}, {"config", config_echo}};
}

void write_spectrum_csv(std::ostream& out, const std::vector<ScatteringPoint>& points,
                        const json& meta, bool no_meta) {
    if (!no_meta) write_meta_comments(out, meta);
    out << "omega_p_ghz,re_t,im_t,abs_t,re_r,im_r,abs_r,t2_plus_r2\n";
    for (const ScatteringPoint& p : points) {
        out << format_double(rad_to_ghz(p.omega_p)) << ',' << format_double(p.t.real()) << ','
            << format_double(p.t.imag()) << ',' << format_double(std::abs(p.t)) << ','
            << format_double(p.r.real()) << ',' << format_double(p.r.imag()) << ','
            << format_double(std::abs(p.r)) << ','
            << format_double(std::norm(p.t) + std::norm(p.r)) << '\n';
    }
}

json spectrum_json(const std::vector<ScatteringPoint>& points, const json& meta,
                   bool no_meta) {
    json omega = json::array();
    json re_t = json::array(), im_t = json::array();
    json re_r = json::array(), im_r = json::array();
    for (const ScatteringPoint& p : points) {
        omega.push_back(rad_to_ghz(p.omega_p));
        re_t.push_back(p.t.real());
        im_t.push_back(p.t.imag());
        re_r.push_back(p.r.real());
        im_r.push_back(p.r.imag());
    }
    json j{{"omega_p_ghz", std::move(omega)},
           {"re_t", std::move(re_t)},
           {"im_t", std::move(im_t)},
           {"re_r", std::move(re_r)},
           {"im_r", std::move(im_r)}};
    if (!no_meta) j["meta"] = meta;
    return j;
}

namespace {

double control_in_unit(const SweepResult& r, double value) {
    if (r.control.unit == "ghz") return rad_to_ghz(value);
    if (r.control.unit == "mhz") return rad_to_mhz(value);
    return value;
}

} // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result, bool no_meta) {
    if (!no_meta) {
        write_meta_comments(out, json{{"scenario", result.scenario_id},
                                      {"generated", timestamp_utc()}});
    }
    out << result.control.name << '_' << result.control.unit
        << ",omega_p_ghz,abs_t,abs_r\n";
    for (std::size_t c = 0; c < result.control.values.size(); ++c) {
        const double control = control_in_unit(result, result.control.values[c]);
        for (const ScatteringPoint& p : result.points[c]) {
            out << format_double(control) << ',' << format_double(rad_to_ghz(p.omega_p))
                << ',' << format_double(std::abs(p.t)) << ','
                << format_double(std::abs(p.r)) << '\n';
        }
    }
}

json sweep_json(const SweepResult& result, bool no_meta) {
    json control = json::array();
    for (double v : result.control.values) control.push_back(control_in_unit(result, v));
    json probe = json::array();
    for (double w : result.probe) probe.push_back(rad_to_ghz(w));

    json abs_t = json::array(), abs_r = json::array();
    for (const auto& row : result.points) {
        json rt = json::array(), rr = json::array();
        for (const ScatteringPoint& p : row) {
            rt.push_back(std::abs(p.t));
            rr.push_back(std::abs(p.r));
        }
        abs_t.push_back(std::move(rt));
        abs_r.push_back(std::move(rr));
    }

    json j{{"scenario", result.scenario_id},
           {"control", {{"name", result.control.name},
                        {"unit", result.control.unit},
                        {"values", std::move(control)}}},
           {"omega_p_ghz", std::move(probe)},
           {"abs_t", std::move(abs_t)},
           {"abs_r", std::move(abs_r)}};
    if (!no_meta)
        j["meta"] = json{{"generated", timestamp_utc()},
                         {"spec", scenario_spec_json(result.spec)}};
    else
        j["meta"] = json{{"spec", scenario_spec_json(result.spec)}};
    return j;
}

json analysis_sidecar(const SweepResult& result) {
    json per_control = json::array();
    std::vector<double> ns, fwhms;
    for (std::size_t c = 0; c < result.control.values.size(); ++c) {
        json entry;
        entry["control"] = control_in_unit(result, result.control.values[c]);

        const SpectralCurve t2 = result.curve(c, CurveTag::AbsT2);
        try {
            const double w = fwhm_of_dip(t2);
            entry["fwhm_mhz"] = rad_to_mhz(w);
            ns.push_back(result.control.values[c]);
            fwhms.push_back(w);
        } catch (const AnalysisError&) {
            entry["fwhm_mhz"] = nullptr;
        }
        try {
            entry["flat_bottom_mhz"] = rad_to_mhz(flat_bottom_width(t2));
        } catch (const AnalysisError&) {
            entry["flat_bottom_mhz"] = nullptr;
        }

        json windows = json::array();
        for (const TransparencyWindow& w : detect_windows(result.curve(c, CurveTag::AbsT)).windows) {
            windows.push_back({{"center_ghz", rad_to_ghz(w.center)},
                               {"width_mhz", rad_to_mhz(w.width)},
                               {"peak", w.peak},
                               {"prominence", w.prominence}});
        }
        entry["windows"] = std::move(windows);
        per_control.push_back(std::move(entry));
    }

    json j{{"scenario", result.scenario_id}, {"per_control", std::move(per_control)}};

    if (ns.size() >= 2) {
        // least-squares line through (control, fwhm)
        const double n = static_cast<double>(ns.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            sx += ns[i];
            sy += fwhms[i];
            sxx += ns[i] * ns[i];
            sxy += ns[i] * fwhms[i];
        }
        const double det = n * sxx - sx * sx;
        if (det != 0.0) {
            const double slope = (n * sxy - sx * sy) / det;
            const double intercept = (sy * sxx - sx * sxy) / det;
            j["fwhm_linear_fit"] = {{"slope_mhz", rad_to_mhz(slope)},
                                    {"intercept_mhz", rad_to_mhz(intercept)}};
        }
    }

    if (result.mode_track) {
        const ModeTrack& track = *result.mode_track;
        json tracks = json::array();
        for (std::size_t m = 0; m < track.tracks.size(); ++m) {
            json detuning = json::array(), decay = json::array();
            for (std::size_t k = 0; k < track.parameter.size(); ++k) {
                detuning.push_back(rad_to_mhz(track.detuning(static_cast<int>(m), static_cast<int>(k))));
                decay.push_back(rad_to_mhz(track.decay_rate(static_cast<int>(m), static_cast<int>(k))));
            }
            tracks.push_back({{"detuning_mhz", std::move(detuning)},
                              {"decay_mhz", std::move(decay)},
                              {"crossing_flagged", track.crossing_flagged[m]}});
        }
        json parameter = json::array();
        for (double p : track.parameter) parameter.push_back(rad_to_ghz(p));
        j["mode_track"] = {{"parameter_ghz", std::move(parameter)},
                           {"tracks", std::move(tracks)}};
    }
    return j;
}

std::vector<ScatteringPoint> read_spectrum_csv(std::istream& in) {
    std::vector<ScatteringPoint> points;
    std::string line;
    bool header_seen = false;
    int col_omega = -1, col_re_t = -1, col_im_t = -1, col_re_r = -1, col_im_r = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
                if (cells[static_cast<std::size_t>(i)] == "omega_p_ghz") col_omega = i;
                if (cells[static_cast<std::size_t>(i)] == "re_t") col_re_t = i;
                if (cells[static_cast<std::size_t>(i)] == "im_t") col_im_t = i;
                if (cells[static_cast<std::size_t>(i)] == "re_r") col_re_r = i;
                if (cells[static_cast<std::size_t>(i)] == "im_r") col_im_r = i;
            }
            if (col_omega < 0 || col_re_t < 0 || col_im_t < 0)
                throw ConfigError("spectrum CSV: need columns omega_p_ghz, re_t, im_t");
            header_seen = true;
            continue;
        }
        ScatteringPoint p;
        try {
            p.omega_p = ghz_to_rad(std::stod(cells.at(static_cast<std::size_t>(col_omega))));
            p.t = cdouble(std::stod(cells.at(static_cast<std::size_t>(col_re_t))),
                          std::stod(cells.at(static_cast<std::size_t>(col_im_t))));
            if (col_re_r >= 0 && col_im_r >= 0)
                p.r = cdouble(std::stod(cells.at(static_cast<std::size_t>(col_re_r))),
                              std::stod(cells.at(static_cast<std::size_t>(col_im_r))));
        } catch (const std::exception&) {
            throw ConfigError("spectrum CSV: malformed row '" + line + "'");
        }
        points.push_back(p);
    }
    if (!header_seen) throw ConfigError("spectrum CSV: missing header row");
    return points;
}

} // namespace superatom
